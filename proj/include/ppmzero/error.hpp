#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppmzero {

enum class ErrorKind {
    invalid_argument,
    parse,
    overflow,
    empty_domain,
    undefined_ratios,
    unsupported_regime,
    precondition,
    dimension_mismatch,
    duplicate_input,
    no_codeword,
    ambiguous,
    regime_mismatch,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::overflow: return "arithmetic overflow";
    case ErrorKind::empty_domain: return "empty domain";
    case ErrorKind::undefined_ratios: return "undefined ratios";
    case ErrorKind::unsupported_regime: return "unsupported regime";
    case ErrorKind::precondition: return "precondition violated";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::duplicate_input: return "duplicate input";
    case ErrorKind::no_codeword: return "no consistent codeword";
    case ErrorKind::ambiguous: return "ambiguous decoding";
    case ErrorKind::regime_mismatch: return "regime mismatch";
    }
    return "unknown error";
}

/// Every failure in the library is reported as an Error carrying a kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ppmzero

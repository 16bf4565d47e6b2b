#pragma once

/**
 * @file channel.hpp
 * @brief The timing channel Y_i = T Z_i X_i.
 *
 * T is the per-frame drift factor in [1, gamma]; Z_i are independent
 * per-run jitter factors in [1, xi]. Realizations are exact rationals.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <type_traits>
#include <variant>
#include <vector>

#include "ppmzero/core.hpp"

namespace ppmzero {

struct ChannelRealization {
    Rational drift{1};
    std::vector<Rational> jitter;

    /// Throws unless 1 <= T <= gamma and 1 <= Z_i <= xi.
    void validate(const ChannelSpec& spec) const
    {
        if (drift < Rational(1) || spec.gamma() < drift)
            throw Error(ErrorKind::invalid_argument, "drift factor " + drift.to_string() + " outside [1, gamma]");
        for (const auto& z : jitter)
            if (z < Rational(1) || spec.xi() < z)
                throw Error(ErrorKind::invalid_argument, "jitter factor " + z.to_string() + " outside [1, xi]");
    }
};

enum class SignalMode { exact, floating };

/// Received run lengths: exact rationals, or doubles as a real receiver measures them.
class ObservedSignal {
public:
    explicit ObservedSignal(std::vector<Rational> values) : values_(std::move(values)) { check(); }
    explicit ObservedSignal(std::vector<double> values) : values_(std::move(values)) { check(); }

    SignalMode mode() const noexcept
    {
        return std::holds_alternative<std::vector<Rational>>(values_) ? SignalMode::exact : SignalMode::floating;
    }

    std::size_t size() const noexcept
    {
        return std::visit([](const auto& v) { return v.size(); }, values_);
    }

    const std::vector<Rational>& exact() const { return std::get<std::vector<Rational>>(values_); }
    const std::vector<double>& floating() const { return std::get<std::vector<double>>(values_); }

    /// Nearest doubles of the exact values (identity in floating mode).
    ObservedSignal to_floating() const
    {
        if (mode() == SignalMode::floating)
            return *this;
        std::vector<double> out;
        for (const auto& r : exact())
            out.push_back(r.to_double());
        return ObservedSignal(std::move(out));
    }

    /// Every observation multiplied by lambda (> 0).
    ObservedSignal scaled(const Rational& lambda) const
    {
        if (!lambda.is_positive())
            throw Error(ErrorKind::invalid_argument, "scale factor must be positive");
        if (mode() == SignalMode::floating) {
            std::vector<double> out(floating());
            for (double& v : out)
                v *= lambda.to_double();
            return ObservedSignal(std::move(out));
        }
        std::vector<Rational> out(exact());
        for (auto& v : out)
            v *= lambda;
        return ObservedSignal(std::move(out));
    }

    friend bool operator==(const ObservedSignal&, const ObservedSignal&) = default;

private:
    void check() const
    {
        if (size() == 0)
            throw Error(ErrorKind::invalid_argument, "observed signal is empty");
        bool positive = std::visit(
            [](const auto& v) {
                for (const auto& y : v)
                    if (!(y > std::remove_cvref_t<decltype(y)>(0)))
                        return false;
                return true;
            },
            values_);
        if (!positive)
            throw Error(ErrorKind::invalid_argument, "observations must be strictly positive");
    }

    std::variant<std::vector<Rational>, std::vector<double>> values_;
};

inline ObservedSignal transmit(const RunVector& x, const ChannelRealization& r)
{
    if (r.jitter.size() != x.size())
        throw Error(ErrorKind::dimension_mismatch, "realization has " + std::to_string(r.jitter.size()) +
                                                       " jitter factors for " + std::to_string(x.size()) + " runs");
    std::vector<Rational> y;
    y.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y.push_back(r.drift * r.jitter[i] * Rational(x[i]));
    return ObservedSignal(std::move(y));
}

enum class SamplingMode { uniform, endpoints };

/// splitmix64 finalizer; per-trial seeds are mix(seed, trial).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::size_t corner_count(std::size_t k) { return std::size_t{1} << (k + 1); }

/// Corner `index` of [1, gamma] x [1, xi]^k: bit 0 picks T, bit i picks Z_i.
/// Unbounded drift needs a finite stand-in for the upper T corner.
inline ChannelRealization corner_realization(const ChannelSpec& spec, std::size_t k, std::uint64_t index,
                                             std::optional<Rational> drift_cap = std::nullopt)
{
    Rational top_drift;
    if (spec.drift_unbounded()) {
        if (!drift_cap)
            throw Error(ErrorKind::invalid_argument, "corner realizations under unbounded drift need a T cap");
        if (*drift_cap < Rational(1))
            throw Error(ErrorKind::invalid_argument, "T cap must be >= 1");
        top_drift = *drift_cap;
    } else {
        top_drift = spec.gamma().value();
    }
    index %= corner_count(k);
    ChannelRealization r;
    r.drift = (index & 1u) ? top_drift : Rational(1);
    for (std::size_t i = 0; i < k; ++i)
        r.jitter.push_back(((index >> (i + 1)) & 1u) ? spec.xi() : Rational(1));
    return r;
}

/// Resolution of uniform draws: values lie on a 2^-32 grid of each interval.
/// Keeps exact observations within the 128-bit range the decoder works in.
inline constexpr int uniform_grid_bits = 32;

/// T and Z_i drawn uniformly on a 2^-32 grid of their intervals.
inline ChannelRealization uniform_realization(const ChannelSpec& spec, std::size_t k, std::uint64_t seed)
{
    if (spec.drift_unbounded())
        throw Error(ErrorKind::invalid_argument,
                    "unbounded drift cannot be sampled uniformly; use endpoints mode with a T cap");
    std::mt19937_64 rng(seed);
    const Rational grid(wide_int{1} << uniform_grid_bits);
    auto draw = [&](const Rational& upper) {
        Rational fraction = Rational(static_cast<wide_int>(rng() >> (64 - uniform_grid_bits))) / grid;
        return Rational(1) + (upper - Rational(1)) * fraction;
    };
    ChannelRealization r;
    r.drift = draw(spec.gamma().value());
    for (std::size_t i = 0; i < k; ++i)
        r.jitter.push_back(draw(spec.xi()));
    return r;
}

/// Uniform: `seed` seeds the generator. Endpoints: `seed` is the corner index.
inline ChannelRealization sample_realization(const ChannelSpec& spec, std::size_t k, std::uint64_t seed,
                                             SamplingMode mode, std::optional<Rational> drift_cap = std::nullopt)
{
    if (mode == SamplingMode::endpoints)
        return corner_realization(spec, k, seed, drift_cap);
    return uniform_realization(spec, k, seed);
}

} // namespace ppmzero

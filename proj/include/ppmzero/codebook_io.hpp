#pragma once

/**
 * @file codebook_io.hpp
 * @brief Plain-text codebook files.
 *
 *     k=2 M=65 xi=1 gamma=7/4 regime=bounded-drift
 *     1 1
 *     1 2
 *     ...
 *
 * One header line, then one codeword per line (runs separated by single
 * spaces) in lexicographic order, '\n' line endings. Rationals are written
 * in canonical "p/q" form so the output is byte-identical everywhere.
 */

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "ppmzero/core.hpp"

namespace ppmzero {

inline std::string format_header(const Codebook& c)
{
    return "k=" + std::to_string(c.k()) + " M=" + std::to_string(c.frame()) + " xi=" + c.spec().xi().to_string() +
           " gamma=" + c.spec().gamma().to_string() + " regime=" + std::string(to_string(c.regime()));
}

inline void write_codebook(std::ostream& out, const Codebook& c)
{
    out << format_header(c) << '\n';
    for (const auto& x : c.codewords())
        out << x.to_string() << '\n';
}

inline std::string format_codebook(const Codebook& c)
{
    std::ostringstream out;
    write_codebook(out, c);
    return out.str();
}

inline Codebook read_codebook(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw Error(ErrorKind::parse, "codebook file is empty");

    std::map<std::string, std::string> fields;
    std::istringstream hs(header);
    std::string token;
    while (hs >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorKind::parse, "malformed header field '" + token + "'");
        if (!fields.emplace(token.substr(0, eq), token.substr(eq + 1)).second)
            throw Error(ErrorKind::parse, "header field '" + token.substr(0, eq) + "' repeated");
    }
    for (const char* key : {"k", "M", "xi", "gamma", "regime"})
        if (!fields.count(key))
            throw Error(ErrorKind::parse, std::string("header is missing '") + key + "='");
    if (fields.size() != 5)
        throw Error(ErrorKind::parse, "header has unknown fields");

    auto parse_positive = [](const std::string& text, const char* name) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(text, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != text.size() || v < 1)
            throw Error(ErrorKind::parse, std::string(name) + " must be a positive integer, got '" + text + "'");
        return v;
    };
    const auto k = static_cast<std::size_t>(parse_positive(fields["k"], "k"));
    const Run frame = parse_positive(fields["M"], "M");
    ChannelSpec spec = ChannelSpec::parse(fields["xi"], fields["gamma"]);
    Regime regime = parse_regime(fields["regime"]);

    std::vector<RunVector> words;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            words.push_back(RunVector::parse(line, frame));
        } catch (const Error& e) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return Codebook(k, frame, spec, regime, std::move(words));
}

inline Codebook load_codebook(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::parse, "cannot open codebook file '" + path + "'");
    return read_codebook(in);
}

inline void save_codebook(const std::string& path, const Codebook& c)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::invalid_argument, "cannot write codebook file '" + path + "'");
    write_codebook(out, c);
}

} // namespace ppmzero

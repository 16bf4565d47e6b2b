#pragma once

/**
 * @file cli.hpp
 * @brief The subcommands behind the `ppmzero` tool.
 *
 * Each command takes a plain options struct and two streams and returns
 * the process exit code, so the tool and the tests share one code path.
 *
 * Exit codes: 0 success, 1 usage error, 2 verification or simulation
 * failure, 3 search budget exceeded.
 */

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ppmzero/channel.hpp"
#include "ppmzero/codebook_io.hpp"
#include "ppmzero/constructions.hpp"
#include "ppmzero/decode.hpp"
#include "ppmzero/oracle.hpp"

namespace ppmzero::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_failure = 2,
    exit_budget = 3,
};

inline std::string format_rate(double bits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", bits);
    return buf;
}

struct ConstructOptions {
    std::size_t k = 2;
    Run frame = 65;
    std::string xi = "1";
    std::string gamma = "inf";
    std::optional<std::string> regime; // auto-selected from (xi, gamma) when absent
    std::optional<std::string> out;
};

inline int run_construct(const ConstructOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        ChannelSpec spec = ChannelSpec::parse(opt.xi, opt.gamma);
        Regime regime = opt.regime ? parse_regime(*opt.regime) : auto_regime(spec);
        Codebook code = construct(regime, opt.k, opt.frame, spec);
        if (opt.out)
            save_codebook(*opt.out, code);
        out << "size=" << code.size() << " rate=" << format_rate(rate_bits(code)) << '\n';
        return exit_ok;
    } catch (const Error& e) {
        err << "construct: " << e.what() << '\n';
        return exit_usage;
    }
}

enum class SweepParam { gamma, xi, frame };

struct SweepOptions {
    std::string param;  // gamma | xi | M
    std::string values; // "a,b,c" or "start:stop:step"
    std::size_t k = 2;
    Run frame = 65;
    std::string xi = "1";
    std::string gamma = "inf";
    std::optional<std::string> regime;
    std::optional<std::string> csv; // standard output when absent
};

struct SweepRow {
    std::string param_value;
    std::size_t size = 0;
    double rate = 0;
    std::optional<double> best_rate;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline SweepParam parse_param(const std::string& p)
{
    if (p == "gamma")
        return SweepParam::gamma;
    if (p == "xi")
        return SweepParam::xi;
    if (p == "M")
        return SweepParam::frame;
    throw Error(ErrorKind::invalid_argument, "--param must be gamma, xi or M, got '" + p + "'");
}

} // namespace detail

/// Grid values, in order. "inf" is accepted only for gamma.
inline std::vector<ExtendedRational> parse_grid(const std::string& values, SweepParam param)
{
    std::vector<ExtendedRational> grid;
    if (values.find(':') != std::string::npos) {
        auto parts = detail::split(values, ':');
        if (parts.size() != 3)
            throw Error(ErrorKind::invalid_argument, "range grids are start:stop:step, got '" + values + "'");
        for (const auto& v : rational_grid(Rational::parse(parts[0]), Rational::parse(parts[1]),
                                           Rational::parse(parts[2])))
            grid.emplace_back(v);
    } else {
        for (const auto& token : detail::split(values, ','))
            grid.push_back(ExtendedRational::parse(token));
    }
    if (grid.empty())
        throw Error(ErrorKind::invalid_argument, "empty grid");
    for (const auto& v : grid) {
        if (v.is_infinite() && param != SweepParam::gamma)
            throw Error(ErrorKind::invalid_argument, "only gamma may be infinite");
        if (param == SweepParam::frame && (!v.value().is_integer() || v.value() < Rational(1)))
            throw Error(ErrorKind::invalid_argument, "M values must be positive integers");
        if (param != SweepParam::frame && v < Rational(1))
            throw Error(ErrorKind::invalid_argument, "xi and gamma values must be >= 1");
    }
    return grid;
}

inline std::vector<SweepRow> sweep(const SweepOptions& opt)
{
    const SweepParam param = detail::parse_param(opt.param);
    const std::vector<ExtendedRational> grid = parse_grid(opt.values, param);
    const std::optional<Regime> fixed_regime =
        opt.regime ? std::optional<Regime>(parse_regime(*opt.regime)) : std::nullopt;
    const Rational base_xi = Rational::parse(opt.xi);
    const ExtendedRational base_gamma = ExtendedRational::parse(opt.gamma);

    auto evaluate = [&](const ExtendedRational& v) {
        Rational xi = base_xi;
        ExtendedRational gamma = base_gamma;
        Run frame = opt.frame;
        switch (param) {
        case SweepParam::gamma: gamma = v; break;
        case SweepParam::xi: xi = v.value(); break;
        case SweepParam::frame: frame = static_cast<Run>(v.value().numerator()); break;
        }
        ChannelSpec spec(xi, gamma);
        Codebook code = construct(fixed_regime.value_or(auto_regime(spec)), opt.k, frame, spec);
        return code.size();
    };

    // grid points are independent; rows are emitted in grid order
    std::vector<std::future<std::size_t>> pending;
    for (const auto& v : grid)
        pending.push_back(std::async(std::launch::async, evaluate, v));

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SweepRow row;
        row.param_value = grid[i].to_decimal_string();
        row.size = pending[i].get();
        row.rate = rate_bits(row.size);
        rows.push_back(row);
    }

    // Best over the remaining grid tail (xi' >= xi) of the jitter/bounded-drift code.
    const bool with_best = param == SweepParam::xi && base_gamma.is_finite() && opt.k == 2;
    if (with_best) {
        std::vector<std::size_t> tail_sizes(grid.size());
        std::vector<std::future<std::size_t>> lower;
        for (const auto& v : grid)
            lower.push_back(std::async(std::launch::async, [&, v] {
                return code_jitter_bounded_drift(opt.frame, v.value(), base_gamma.value()).size();
            }));
        for (std::size_t i = 0; i < grid.size(); ++i)
            tail_sizes[i] = lower[i].get();
        std::size_t best = 0;
        for (std::size_t i = grid.size(); i-- > 0;) {
            best = std::max(best, tail_sizes[i]);
            rows[i].best_rate = rate_bits(best);
        }
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows)
{
    const bool with_best = !rows.empty() && rows.front().best_rate.has_value();
    out << "param_value,codebook_size,rate_bits" << (with_best ? ",best_rate_bits" : "") << '\n';
    for (const auto& r : rows) {
        out << r.param_value << ',' << r.size << ',' << format_rate(r.rate);
        if (with_best)
            out << ',' << format_rate(*r.best_rate);
        out << '\n';
    }
}

inline int run_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        auto rows = sweep(opt);
        if (opt.csv) {
            std::ofstream file(*opt.csv, std::ios::binary);
            if (!file)
                throw Error(ErrorKind::invalid_argument, "cannot write '" + *opt.csv + "'");
            write_sweep_csv(file, rows);
        } else {
            write_sweep_csv(out, rows);
        }
        return exit_ok;
    } catch (const Error& e) {
        err << "sweep: " << e.what() << '\n';
        return exit_usage;
    }
}

struct SimulateOptions {
    std::string code;
    std::optional<std::uint64_t> trials; // endpoints mode defaults to every codeword x every corner
    std::uint64_t seed = 1;
    std::string mode = "endpoints";
    std::string drift_cap = "1000"; // upper T corner when gamma = inf
    bool floating = false;          // decode double-precision observations
    unsigned threads = 0;           // 0: hardware concurrency
};

struct SimulationSummary {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    std::uint64_t fast_mismatches = 0; // counted within failures
};

namespace detail {

struct TrialOutcome {
    bool ok = true;
    bool fast_mismatch = false;
};

inline std::optional<RunVector> try_decode(const ObservedSignal& y, const Codebook& c)
{
    try {
        return decode(y, c, c.spec());
    } catch (const Error&) {
        return std::nullopt;
    }
}

inline std::optional<RunVector> try_decode_fast(const ObservedSignal& y, const FastDecoder& d)
{
    try {
        return d.decode(y, d.codebook().spec());
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace detail

inline SimulationSummary simulate(const Codebook& code, const SimulateOptions& opt)
{
    if (code.empty())
        throw Error(ErrorKind::invalid_argument, "cannot simulate an empty codebook");
    SamplingMode mode;
    if (opt.mode == "endpoints")
        mode = SamplingMode::endpoints;
    else if (opt.mode == "uniform")
        mode = SamplingMode::uniform;
    else
        throw Error(ErrorKind::invalid_argument, "--mode must be endpoints or uniform");
    const ChannelSpec& spec = code.spec();
    if (mode == SamplingMode::uniform && spec.drift_unbounded())
        throw Error(ErrorKind::invalid_argument,
                    "uniform sampling needs bounded drift; use --mode endpoints (with --t-cap) for gamma=inf");
    const Rational cap = Rational::parse(opt.drift_cap);
    const std::uint64_t corners = corner_count(code.k());
    const std::uint64_t trials =
        opt.trials.value_or(mode == SamplingMode::endpoints ? code.size() * corners : 1000);

    std::optional<FastDecoder> fast;
    try {
        fast.emplace(code);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::regime_mismatch)
            throw;
    }

    auto run_trial = [&](std::uint64_t t) {
        std::size_t index;
        ChannelRealization r;
        if (mode == SamplingMode::endpoints) {
            index = static_cast<std::size_t>(t % code.size());
            r = corner_realization(spec, code.k(), (t / code.size()) % corners, cap);
        } else {
            index = static_cast<std::size_t>(mix_seed(opt.seed, 2 * t) % code.size());
            r = uniform_realization(spec, code.k(), mix_seed(opt.seed, 2 * t + 1));
        }
        const RunVector& sent = code.codewords()[index];
        ObservedSignal y = transmit(sent, r);
        if (opt.floating)
            y = y.to_floating();
        detail::TrialOutcome outcome;
        auto general = detail::try_decode(y, code);
        outcome.ok = general && *general == sent;
        if (fast) {
            auto structured = detail::try_decode_fast(y, *fast);
            if (structured != general) {
                outcome.fast_mismatch = true;
                outcome.ok = false;
            }
        }
        return outcome;
    };

    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(trials, 1)));
    std::vector<SimulationSummary> partial(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t t = w; t < trials; t += workers) {
                    auto o = run_trial(t);
                    ++partial[w].trials;
                    partial[w].failures += o.ok ? 0 : 1;
                    partial[w].fast_mismatches += o.fast_mismatch ? 1 : 0;
                }
            });
    }
    SimulationSummary total;
    for (const auto& p : partial) {
        total.trials += p.trials;
        total.failures += p.failures;
        total.fast_mismatches += p.fast_mismatches;
    }
    return total;
}

inline int run_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        Codebook code = load_codebook(opt.code);
        SimulationSummary s = simulate(code, opt);
        out << "trials=" << s.trials << " failures=" << s.failures << '\n';
        return s.failures == 0 ? exit_ok : exit_failure;
    } catch (const Error& e) {
        err << "simulate: " << e.what() << '\n';
        return exit_usage;
    }
}

struct VerifyOptions {
    std::string code;
    std::optional<std::string> xi;    // defaults to the file header
    std::optional<std::string> gamma; // defaults to the file header
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        Codebook code = load_codebook(opt.code);
        ChannelSpec spec(opt.xi ? Rational::parse(*opt.xi) : code.spec().xi(),
                         opt.gamma ? ExtendedRational::parse(*opt.gamma) : code.spec().gamma());
        ZeroErrorReport report = verify_zero_error(code, spec);
        for (const auto& [a, b] : report.violations)
            out << a << " ~ " << b << '\n';
        out << "violations=" << report.violations.size() << '\n';
        return report.zero_error() ? exit_ok : exit_failure;
    } catch (const Error& e) {
        err << "verify: " << e.what() << '\n';
        return exit_usage;
    }
}

struct OracleOptions {
    std::size_t k = 2;
    Run frame = 6;
    std::string xi = "1";
    std::string gamma = "inf";
    double budget_seconds = 60;
    std::optional<std::string> out;
};

inline int run_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err)
{
    try {
        ChannelSpec spec = ChannelSpec::parse(opt.xi, opt.gamma);
        OracleResult r = optimal_code_bruteforce(opt.k, opt.frame, spec, SearchBudget::seconds(opt.budget_seconds));
        if (opt.out)
            save_codebook(*opt.out, r.code);
        out << "mis_size=" << r.code.size() << " status=" << to_string(r.status) << '\n';
        return r.status == MisStatus::exact ? exit_ok : exit_budget;
    } catch (const Error& e) {
        err << "oracle: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace ppmzero::cli

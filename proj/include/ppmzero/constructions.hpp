#pragma once

/**
 * @file constructions.hpp
 * @brief Zero-error PPM codebooks for each drift/jitter regime.
 *
 *   regime                   channel                 optimal?
 *   gcd                      xi = 1, gamma = inf     yes
 *   bounded-drift            xi = 1, gamma < inf     yes
 *   jitter                   gamma = 1               yes
 *   jitter-unbounded-drift   k = 2, gamma = inf      yes
 *   jitter-bounded-drift     k = 2, gamma < inf      achievable only
 *
 * plus the perfect-sync upper bound and the naive "learn the clock from
 * the first pulse" baseline.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ppmzero/core.hpp"

namespace ppmzero {

/// Multiples d_1 = 1 < d_2 < ... of a base vector with d_i / d_{i-1} > step.
struct Chain {
    RunVector base;
    std::vector<Run> multipliers;
    Rational step_ratio;

    std::vector<RunVector> vectors() const
    {
        std::vector<RunVector> out;
        out.reserve(multipliers.size());
        for (Run d : multipliers)
            out.push_back(*base.scaled(d));
        return out;
    }
};

namespace detail {

// Smallest integer strictly greater than step * prev: floor(step * prev + 1).
inline Run next_multiplier(const Rational& step, Run prev)
{
    wide_int next = (step * Rational(prev) + Rational(1)).floor();
    if (next > std::numeric_limits<Run>::max())
        throw Error(ErrorKind::overflow, "chain multiplier exceeds 64 bits");
    return static_cast<Run>(next);
}

inline void require_drift_k(std::size_t k)
{
    if (k < 2)
        throw Error(ErrorKind::unsupported_regime,
                    "k=1 under clock drift: reliable communication is not possible, every single "
                    "run can be stretched onto every other");
}

inline void require_pair_k(std::size_t k)
{
    if (k != 2)
        throw Error(ErrorKind::unsupported_regime,
                    "jitter combined with clock drift is only constructed for k=2 (got k=" + std::to_string(k) + ")");
}

inline void require_at_least_one(const Rational& v, const char* name)
{
    if (v < Rational(1))
        throw Error(ErrorKind::invalid_argument, std::string(name) + " must be >= 1");
}

} // namespace detail

inline Chain multiples_chain_of(const RunVector& x, const Rational& step, Run frame)
{
    detail::require_at_least_one(step, "chain step");
    if (gcd_of(x) != 1)
        throw Error(ErrorKind::precondition, "chain base " + x.to_string() + " must have gcd 1");
    RunVector base = x.with_frame(frame);
    Chain chain{base, {}, step};
    for (Run d = 1; base.scaled(d); d = detail::next_multiplier(step, d))
        chain.multipliers.push_back(d);
    return chain;
}

/// {d_i x}: d_1 = 1, d_i = floor(step d_{i-1} + 1), while d_i x fits in the frame.
inline std::vector<RunVector> multiples_chain(const RunVector& x, const Rational& step, Run frame)
{
    return multiples_chain_of(x, step, frame).vectors();
}

/// l_1 = 1, l_i = floor(xi l_{i-1} + 1), while l_i <= M.
inline std::vector<Run> jitter_chain(Run frame, const Rational& xi)
{
    detail::require_at_least_one(xi, "xi");
    if (frame < 1)
        throw Error(ErrorKind::invalid_argument, "frame must be positive");
    std::vector<Run> out;
    for (Run l = 1; l <= frame; l = detail::next_multiplier(xi, l))
        out.push_back(l);
    return out;
}

/// Every input with gcd 1: optimal for xi = 1, gamma = inf.
inline Codebook code_gcd(std::size_t k, Run frame)
{
    detail::require_drift_k(k);
    std::vector<RunVector> out;
    for (auto& x : enumerate_inputs(k, frame))
        if (gcd_of(x) == 1)
            out.push_back(std::move(x));
    return Codebook(k, frame, ChannelSpec(1, ExtendedRational::infinity()), Regime::gcd, std::move(out));
}

namespace detail {

inline std::vector<RunVector> union_of_chains(const Codebook& bases, const Rational& step)
{
    std::vector<RunVector> out;
    for (const auto& x : bases.codewords())
        for (auto& v : multiples_chain(x, step, bases.frame()))
            out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Union of gamma-chains over the gcd code: optimal for xi = 1, gamma < inf.
inline Codebook code_bounded_drift(std::size_t k, Run frame, const Rational& gamma)
{
    detail::require_at_least_one(gamma, "gamma");
    Codebook base = code_gcd(k, frame);
    return Codebook(k, frame, ChannelSpec(1, gamma), Regime::bounded_drift, detail::union_of_chains(base, gamma));
}

/// Every input whose runs all lie in the xi-chain: optimal for gamma = 1.
inline Codebook code_jitter(std::size_t k, Run frame, const Rational& xi)
{
    std::vector<Run> levels = jitter_chain(frame, xi);
    std::vector<RunVector> out;
    for (auto& x : enumerate_inputs(k, frame)) {
        bool inside = std::all_of(x.runs().begin(), x.runs().end(),
                                  [&](Run r) { return std::binary_search(levels.begin(), levels.end(), r); });
        if (inside)
            out.push_back(std::move(x));
    }
    return Codebook(k, frame, ChannelSpec(xi, 1), Regime::jitter, std::move(out));
}

/// Sorted { x_2 / x_1 : (x_1, x_2) in code_gcd(2, M) }.
inline std::vector<Rational> ratio_set(Run frame)
{
    if (frame < 2)
        throw Error(ErrorKind::empty_domain, "ratio set needs M >= 2");
    const Codebook gcd_code = code_gcd(2, frame);
    std::vector<Rational> out;
    for (const auto& x : gcd_code.codewords())
        out.emplace_back(x[1], x[0]);
    std::sort(out.begin(), out.end());
    return out;
}

/// Greedy ascent over the ratio set with gap xi^2: optimal for k = 2, gamma = inf.
inline Codebook code_jitter_unbounded_drift(Run frame, const Rational& xi)
{
    detail::require_at_least_one(xi, "xi");
    const std::vector<Rational> ratios = ratio_set(frame);
    const Rational xi_squared = xi * xi;

    std::vector<RunVector> out;
    auto add = [&](const Rational& u) {
        // lowest terms u = x_2 / x_1 gives the unique gcd-1 pair
        out.emplace_back(std::vector<Run>{static_cast<Run>(u.denominator()), static_cast<Run>(u.numerator())},
                         frame);
    };
    auto it = ratios.begin(); // 1/(M-1), the smallest ratio
    while (it != ratios.end()) {
        add(*it);
        it = std::upper_bound(it, ratios.end(), xi_squared * *it);
    }
    return Codebook(2, frame, ChannelSpec(xi, ExtendedRational::infinity()), Regime::jitter_unbounded_drift,
                    std::move(out));
}

/// (gamma xi)-chains over the unbounded-drift jitter code: zero-error for k = 2, gamma < inf.
inline Codebook code_jitter_bounded_drift(Run frame, const Rational& xi, const Rational& gamma)
{
    detail::require_at_least_one(gamma, "gamma");
    Codebook base = code_jitter_unbounded_drift(frame, xi);
    return Codebook(2, frame, ChannelSpec(xi, gamma), Regime::jitter_bounded_drift,
                    detail::union_of_chains(base, gamma * xi));
}

/// All binomial(M, k) inputs: the no-drift, no-jitter upper bound.
inline Codebook perfect_sync_code(std::size_t k, Run frame)
{
    return Codebook(k, frame, ChannelSpec(1, 1), Regime::perfect_sync, enumerate_inputs(k, frame));
}

/// log2 binomial(M-1, k-1): first pulse spent on learning the clock.
inline double naive_rate(std::size_t k, Run frame)
{
    if (k < 1 || frame < static_cast<Run>(k))
        throw Error(ErrorKind::empty_domain, "naive rate needs 1 <= k <= M");
    return std::log2(static_cast<double>(binomial(static_cast<std::uint64_t>(frame - 1), k - 1)));
}

/// Largest jitter/bounded-drift codebook over xi' >= xi: a code built for more
/// jitter stays zero-error under less.
inline double best_achievable_rate(Run frame, const Rational& xi, const Rational& gamma,
                                   std::span<const Rational> xi_grid)
{
    if (xi_grid.empty())
        throw Error(ErrorKind::invalid_argument, "best achievable rate needs a non-empty xi grid");
    double best = -1;
    for (const auto& candidate : xi_grid) {
        if (candidate < xi)
            throw Error(ErrorKind::precondition,
                        "grid value " + candidate.to_string() + " is below xi=" + xi.to_string());
        best = std::max(best, rate_bits(code_jitter_bounded_drift(frame, candidate, gamma)));
    }
    return best;
}

/// start, start + step, ... up to and including stop (exact).
inline std::vector<Rational> rational_grid(const Rational& start, const Rational& stop, const Rational& step)
{
    if (!step.is_positive())
        throw Error(ErrorKind::invalid_argument, "grid step must be positive");
    if (stop < start)
        throw Error(ErrorKind::invalid_argument, "grid stop is below its start");
    std::vector<Rational> out;
    for (Rational v = start; v <= stop; v += step)
        out.push_back(v);
    return out;
}

/// Construction matching the channel: xi=1,gamma=inf -> gcd; xi=1 -> bounded
/// drift; gamma=1 -> jitter; gamma=inf -> jitter/unbounded; else jitter/bounded.
inline Regime auto_regime(const ChannelSpec& spec)
{
    if (!spec.has_jitter())
        return spec.drift_unbounded() ? Regime::gcd : Regime::bounded_drift;
    if (!spec.has_drift())
        return Regime::jitter;
    return spec.drift_unbounded() ? Regime::jitter_unbounded_drift : Regime::jitter_bounded_drift;
}

namespace detail {

inline const Rational& finite_gamma(const ChannelSpec& spec, Regime regime)
{
    if (spec.drift_unbounded())
        throw Error(ErrorKind::unsupported_regime,
                    std::string(to_string(regime)) + " needs a finite gamma");
    return spec.gamma().value();
}

} // namespace detail

/// Builds the codebook for a regime from (k, M, spec). The xi/gamma the
/// regime does not use must be at their neutral values.
inline Codebook construct(Regime regime, std::size_t k, Run frame, const ChannelSpec& spec)
{
    auto require_no_jitter = [&] {
        if (spec.has_jitter())
            throw Error(ErrorKind::unsupported_regime,
                        std::string(to_string(regime)) + " assumes xi=1, got xi=" + spec.xi().to_string());
    };
    switch (regime) {
    case Regime::gcd:
        require_no_jitter();
        return code_gcd(k, frame);
    case Regime::bounded_drift:
        require_no_jitter();
        return code_bounded_drift(k, frame, detail::finite_gamma(spec, regime));
    case Regime::jitter:
        if (spec.has_drift())
            throw Error(ErrorKind::unsupported_regime,
                        "jitter code assumes gamma=1, got gamma=" + spec.gamma().to_string());
        return code_jitter(k, frame, spec.xi());
    case Regime::jitter_unbounded_drift:
        detail::require_pair_k(k);
        return code_jitter_unbounded_drift(frame, spec.xi());
    case Regime::jitter_bounded_drift:
        detail::require_pair_k(k);
        return code_jitter_bounded_drift(frame, spec.xi(), detail::finite_gamma(spec, regime));
    case Regime::perfect_sync:
        if (spec.has_jitter() || spec.has_drift())
            throw Error(ErrorKind::unsupported_regime, "perfect-sync code assumes xi=1 and gamma=1");
        return perfect_sync_code(k, frame);
    case Regime::custom:
        break;
    }
    throw Error(ErrorKind::unsupported_regime, "custom codebooks cannot be constructed");
}

} // namespace ppmzero

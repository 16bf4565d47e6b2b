#pragma once

/**
 * @file decode.hpp
 * @brief Receivers for the timing channel.
 *
 * A codeword x is consistent with an observation Y when some T in [1, gamma]
 * and Z_i in [1, xi] give Y_i = T Z_i x_i, i.e. when
 *
 *     [1, gamma]  ∩  ∩_i [Y_i / (xi x_i), Y_i / x_i]
 *
 * is non-empty. With unbounded drift the lower end 1 is dropped as well:
 * only the ratios of Y matter, so decoding is invariant under scaling Y.
 * decode() scans the whole codebook with that test.
 * FastDecoder narrows the search the way the constructions allow (ratio
 * lookup, then the chain multiplier, or per-run lookup for the jitter-only
 * code) and confirms the survivors with the same test, so both receivers
 * return the same answer on every input.
 */

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "ppmzero/channel.hpp"
#include "ppmzero/core.hpp"

namespace ppmzero {

/// Relative widening of interval endpoints for floating observations.
inline constexpr double default_float_tolerance = 1e-9;

namespace detail {

// Coarse double-precision screen ahead of the exact test. Its slack is far
// above double rounding error, so it never rejects an exactly consistent
// codeword.
inline constexpr double screen_slack = 1e-6;

inline bool consistent_floating(std::span<const double> y, const RunVector& x, const ChannelSpec& spec,
                                double tolerance)
{
    const double xi = spec.xi().to_double();
    double lo = spec.drift_unbounded() ? 0.0 : 1.0;
    double hi = spec.drift_unbounded() ? std::numeric_limits<double>::infinity() : spec.gamma().value().to_double();
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = y[i] / static_cast<double>(x[i]);
        lo = std::max(lo, a / xi);
        hi = std::min(hi, a);
    }
    return lo * (1.0 - tolerance) <= hi * (1.0 + tolerance);
}

inline bool consistent_exact(std::span<const Rational> y, const RunVector& x, const ChannelSpec& spec)
{
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    if (!spec.drift_unbounded())
        lo = Rational(1);
    if (!spec.drift_unbounded())
        hi = spec.gamma().value();
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rational a = y[i] / Rational(x[i]);
        Rational l = a / spec.xi();
        if (!lo || *lo < l)
            lo = l;
        if (!hi || a < *hi)
            hi = a;
    }
    return *lo <= *hi;
}

inline void require_length(const ObservedSignal& y, std::size_t k)
{
    if (y.size() != k)
        throw Error(ErrorKind::dimension_mismatch, "observation has " + std::to_string(y.size()) +
                                                       " runs, codebook has k=" + std::to_string(k));
}

inline std::vector<double> approximate(const std::vector<Rational>& y)
{
    std::vector<double> out;
    out.reserve(y.size());
    for (const auto& v : y)
        out.push_back(v.to_double());
    return out;
}

inline RunVector unique_or_throw(const std::vector<RunVector>& found)
{
    if (found.empty())
        throw Error(ErrorKind::no_codeword, "no codeword is consistent with the observation");
    if (found.size() > 1)
        throw Error(ErrorKind::ambiguous, std::to_string(found.size()) + " codewords are consistent, e.g. " +
                                              found[0].to_string() + " and " + found[1].to_string());
    return found.front();
}

// Codewords are sorted by their first run, and a consistent x has
// x_1 in [Y_1 / (gamma xi), Y_1] when the drift is bounded.
inline std::span<const RunVector> first_run_window(const Codebook& c, double y1, const ChannelSpec& spec,
                                                   double tolerance)
{
    std::span<const RunVector> all = c.codewords();
    if (spec.drift_unbounded() || tolerance >= 0.5)
        return all;
    const double spread = (spec.gamma().value() * spec.xi()).to_double();
    const double widen = (1.0 + tolerance) / (1.0 - tolerance) * (1.0 + 1e-12);
    const double lo = y1 / (spread * widen) - 1e-9;
    const double hi = y1 * widen + 1e-9;
    auto first = std::partition_point(all.begin(), all.end(),
                                      [&](const RunVector& x) { return static_cast<double>(x[0]) < lo; });
    auto last = std::partition_point(first, all.end(),
                                     [&](const RunVector& x) { return static_cast<double>(x[0]) <= hi; });
    return {first, last};
}

} // namespace detail

/// Whether x could have produced y under spec.
inline bool consistent(const ObservedSignal& y, const RunVector& x, const ChannelSpec& spec,
                       double tolerance = default_float_tolerance)
{
    detail::require_length(y, x.size());
    if (y.mode() == SignalMode::floating)
        return detail::consistent_floating(y.floating(), x, spec, tolerance);
    return detail::consistent_exact(y.exact(), x, spec);
}

inline std::vector<RunVector> consistent_codewords(const ObservedSignal& y, const Codebook& c, const ChannelSpec& spec,
                                                   double tolerance = default_float_tolerance)
{
    detail::require_length(y, c.k());
    std::vector<RunVector> out;
    if (y.mode() == SignalMode::floating) {
        for (const auto& x : detail::first_run_window(c, y.floating()[0], spec, tolerance))
            if (detail::consistent_floating(y.floating(), x, spec, tolerance))
                out.push_back(x);
        return out;
    }
    const std::vector<double> approx = detail::approximate(y.exact());
    for (const auto& x : detail::first_run_window(c, approx[0], spec, detail::screen_slack))
        if (detail::consistent_floating(approx, x, spec, detail::screen_slack) &&
            detail::consistent_exact(y.exact(), x, spec))
            out.push_back(x);
    return out;
}

/// The unique consistent codeword; ambiguity is an error, never a tie-break.
inline RunVector decode(const ObservedSignal& y, const Codebook& c, const ChannelSpec& spec,
                        double tolerance = default_float_tolerance)
{
    return detail::unique_or_throw(consistent_codewords(y, c, spec, tolerance));
}

/// Structured receiver for the five constructed regimes. Build once per
/// codebook; decode() is const and safe to call concurrently.
class FastDecoder {
public:
    explicit FastDecoder(Codebook codebook) : codebook_(std::move(codebook))
    {
        switch (codebook_.regime()) {
        case Regime::gcd:
        case Regime::bounded_drift:
        case Regime::jitter_unbounded_drift:
        case Regime::jitter_bounded_drift:
            per_run_ = false;
            break;
        case Regime::jitter:
            per_run_ = true;
            break;
        default:
            throw Error(ErrorKind::regime_mismatch, "no structured decoder for regime " +
                                                        std::string(to_string(codebook_.regime())));
        }
        if (per_run_)
            index_levels();
        else
            index_ratio_classes();
    }

    const Codebook& codebook() const noexcept { return codebook_; }

    /// Codewords the structured lookup cannot rule out (before confirmation).
    std::vector<RunVector> candidates(const ObservedSignal& y, const ChannelSpec& spec,
                                      double tolerance = default_float_tolerance) const
    {
        detail::require_length(y, codebook_.k());
        if (y.mode() == SignalMode::floating)
            return per_run_ ? per_run_candidates<double>(y.floating(), spec, tolerance)
                            : ratio_candidates<double>(y.floating(), spec, tolerance);
        return per_run_ ? per_run_candidates<Rational>(y.exact(), spec, 0)
                        : ratio_candidates<Rational>(y.exact(), spec, 0);
    }

    RunVector decode(const ObservedSignal& y, const ChannelSpec& spec,
                     double tolerance = default_float_tolerance) const
    {
        std::vector<RunVector> confirmed;
        for (auto& x : candidates(y, spec, tolerance))
            if (consistent(y, x, spec, tolerance))
                confirmed.push_back(std::move(x));
        return detail::unique_or_throw(confirmed);
    }

private:
    struct RatioClass {
        RunVector base;          // gcd-1 representative
        Rational key;            // base[1] / base[0]
        double key_approx;
        std::vector<Run> multipliers;
    };

    void index_ratio_classes()
    {
        std::map<RunVector, std::vector<Run>> groups;
        for (const auto& x : codebook_.codewords()) {
            Run g = gcd_of(x);
            std::vector<Run> reduced(x.runs().begin(), x.runs().end());
            for (Run& r : reduced)
                r /= g;
            groups[RunVector(std::move(reduced), codebook_.frame())].push_back(g);
        }
        for (auto& [base, mults] : groups) {
            std::sort(mults.begin(), mults.end());
            Rational key(base[1], base[0]);
            classes_.push_back({base, key, key.to_double(), std::move(mults)});
        }
        std::stable_sort(classes_.begin(), classes_.end(),
                         [](const RatioClass& a, const RatioClass& b) { return a.key < b.key; });
    }

    void index_levels()
    {
        for (const auto& x : codebook_.codewords())
            levels_.insert(levels_.end(), x.runs().begin(), x.runs().end());
        std::sort(levels_.begin(), levels_.end());
        levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
    }

    // Closed interval with an optional upper end (unbounded when absent).
    template <typename Num>
    struct Window {
        Num lo;
        std::optional<Num> hi;
        bool above_low(const Num& v) const { return !(v < lo); }
        bool below_high(const Num& v) const { return !hi || !(*hi < v); }
    };

    template <typename Num>
    static Num from_rational(const Rational& r)
    {
        if constexpr (std::is_same_v<Num, double>)
            return r.to_double();
        else
            return r;
    }

    template <typename Num>
    static Window<Num> widen(Window<Num> w, double tolerance)
    {
        if constexpr (std::is_same_v<Num, double>) {
            w.lo *= 1.0 - tolerance;
            if (w.hi)
                *w.hi *= 1.0 + tolerance;
        }
        (void)tolerance;
        return w;
    }

    template <typename Num>
    static std::optional<Num> drift_times_jitter(const ChannelSpec& spec)
    {
        if (spec.drift_unbounded())
            return std::nullopt;
        return from_rational<Num>(spec.gamma().value() * spec.xi());
    }

    // Multipliers d with Y_1 / (d x_1) in [1, gamma xi]: d in [Y_1 / (gamma xi x_1), Y_1 / x_1].
    // Any multiplier fits when the drift is unbounded.
    template <typename Num>
    std::vector<Run> multipliers_in_window(const RatioClass& cls, const Num& y1, const ChannelSpec& spec,
                                           double tolerance) const
    {
        const Num x1 = from_rational<Num>(Rational(cls.base[0]));
        Window<Num> w{Num(0), std::nullopt};
        if (auto g = drift_times_jitter<Num>(spec)) {
            w.lo = y1 / (*g * x1);
            w.hi = y1 / x1;
        }
        w = widen(w, tolerance);
        std::vector<Run> out;
        auto first = std::partition_point(cls.multipliers.begin(), cls.multipliers.end(),
                                          [&](Run d) { return !w.above_low(from_rational<Num>(Rational(d))); });
        for (auto it = first; it != cls.multipliers.end() && w.below_high(from_rational<Num>(Rational(*it))); ++it)
            out.push_back(*it);
        return out;
    }

    // Ratio lookup: Y_2 / Y_1 = u Z_2 / Z_1 lies in [u / xi, u xi], so u is in [r / xi, r xi].
    template <typename Num>
    std::vector<RunVector> ratio_candidates(std::span<const Num> y, const ChannelSpec& spec, double tolerance) const
    {
        const Num xi = from_rational<Num>(spec.xi());
        const Num r = y[1] / y[0];
        Window<Num> w = widen(Window<Num>{r / xi, r * xi}, tolerance);

        auto key_of = [](const RatioClass& c) -> Num {
            if constexpr (std::is_same_v<Num, double>)
                return c.key_approx;
            else
                return c.key;
        };
        auto first = std::partition_point(classes_.begin(), classes_.end(),
                                          [&](const RatioClass& c) { return !w.above_low(key_of(c)); });
        std::vector<RunVector> out;
        for (auto it = first; it != classes_.end() && w.below_high(key_of(*it)); ++it)
            for (Run d : multipliers_in_window<Num>(*it, y[0], spec, tolerance))
                out.push_back(*it->base.scaled(d));
        return out;
    }

    // Per-run lookup: Y_i / l in [1, gamma xi], so l is in [Y_i / (gamma xi), Y_i].
    template <typename Num>
    std::vector<RunVector> per_run_candidates(std::span<const Num> y, const ChannelSpec& spec, double tolerance) const
    {
        const std::optional<Num> spread = drift_times_jitter<Num>(spec);
        std::vector<std::vector<Run>> choices(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            Window<Num> w{Num(0), std::nullopt};
            if (spread) {
                w.lo = y[i] / *spread;
                w.hi = y[i];
            }
            w = widen(w, tolerance);
            auto first = std::partition_point(levels_.begin(), levels_.end(),
                                              [&](Run l) { return !w.above_low(from_rational<Num>(Rational(l))); });
            for (auto it = first; it != levels_.end() && w.below_high(from_rational<Num>(Rational(*it))); ++it)
                choices[i].push_back(*it);
            if (choices[i].empty())
                return {};
        }
        std::vector<RunVector> out;
        std::vector<Run> runs(y.size());
        auto expand = [&](auto&& self, std::size_t i, Run total) -> void {
            if (i == y.size()) {
                RunVector x(runs, codebook_.frame());
                if (codebook_.contains(x))
                    out.push_back(std::move(x));
                return;
            }
            for (Run l : choices[i]) {
                if (total + l > codebook_.frame())
                    break;
                runs[i] = l;
                self(self, i + 1, total + l);
            }
        };
        expand(expand, 0, 0);
        return out;
    }

    Codebook codebook_;
    bool per_run_ = false;
    std::vector<RatioClass> classes_;
    std::vector<Run> levels_;
};

/// One-shot structured decode; prefer a long-lived FastDecoder for many signals.
inline RunVector decode_fast(const ObservedSignal& y, const Codebook& c, const ChannelSpec& spec,
                             double tolerance = default_float_tolerance)
{
    return FastDecoder(c).decode(y, spec, tolerance);
}

} // namespace ppmzero

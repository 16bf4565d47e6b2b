#pragma once

/**
 * @file distinguishability.hpp
 * @brief Pairwise indistinguishability under drift and jitter, and the
 * confusion graph whose independent sets are the zero-error codes.
 *
 * Two inputs x, y are indistinguishable when T Z_i x_i = T' Z'_i y_i for
 * some admissible T, T', Z, Z'. Dividing through, x_i / y_i = rho * (Z'_i/Z_i)
 * with rho = T'/T in [1/gamma, gamma] and Z'_i/Z_i in [1/xi, xi]. So the
 * pair is confusable iff some rho lies in
 *
 *     [max_i x_i/(xi y_i), min_i xi x_i/y_i]  intersected with  [1/gamma, gamma].
 *
 * This single predicate covers every regime.
 */

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "ppmzero/bitset.hpp"
#include "ppmzero/core.hpp"

namespace ppmzero {

namespace detail {

// Unreduced positive fraction; only ever compared, never normalized.
struct Fraction {
    wide_int num;
    wide_int den;
};

inline bool fraction_less(const Fraction& a, const Fraction& b)
{
    return compare_fractions(a.num, a.den, b.num, b.den) < 0;
}

} // namespace detail

inline bool indistinguishable(const RunVector& x, const RunVector& y, const ChannelSpec& spec)
{
    if (x.size() != y.size())
        throw Error(ErrorKind::dimension_mismatch, "indistinguishability needs vectors of equal length");

    const wide_int p = spec.xi().numerator();
    const wide_int q = spec.xi().denominator();

    // low  = max_i (q x_i) / (p y_i)
    // high = min_i (p x_i) / (q y_i)
    detail::Fraction low{detail::checked_mul(q, x[0]), detail::checked_mul(p, y[0])};
    detail::Fraction high{detail::checked_mul(p, x[0]), detail::checked_mul(q, y[0])};
    for (std::size_t i = 1; i < x.size(); ++i) {
        detail::Fraction lo{detail::checked_mul(q, x[i]), detail::checked_mul(p, y[i])};
        detail::Fraction hi{detail::checked_mul(p, x[i]), detail::checked_mul(q, y[i])};
        if (detail::fraction_less(low, lo))
            low = lo;
        if (detail::fraction_less(hi, high))
            high = hi;
    }
    if (detail::fraction_less(high, low))
        return false;
    if (spec.gamma().is_infinite())
        return true;
    const Rational& g = spec.gamma().value();
    // low <= gamma and high >= 1/gamma
    if (detail::compare_fractions(low.num, low.den, g.numerator(), g.denominator()) > 0)
        return false;
    return detail::compare_fractions(high.num, high.den, g.denominator(), g.numerator()) >= 0;
}

/// Inputs as vertices, indistinguishable pairs as edges.
class ConfusionGraph {
public:
    ConfusionGraph(std::vector<RunVector> vertices, std::vector<Bitset> adjacency)
        : vertices_(std::move(vertices)), adjacency_(std::move(adjacency))
    {
        if (vertices_.size() != adjacency_.size())
            throw Error(ErrorKind::dimension_mismatch, "adjacency rows must match vertex count");
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    std::span<const RunVector> vertices() const noexcept { return vertices_; }
    const RunVector& vertex(std::size_t i) const { return vertices_[i]; }
    const Bitset& neighbours(std::size_t i) const { return adjacency_[i]; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i].test(j); }
    std::size_t degree(std::size_t i) const { return adjacency_[i].count(); }

    std::size_t edge_count() const
    {
        std::size_t total = 0;
        for (const auto& row : adjacency_)
            total += row.count();
        return total / 2;
    }

private:
    std::vector<RunVector> vertices_;
    std::vector<Bitset> adjacency_;
};

inline ConfusionGraph confusion_graph(std::vector<RunVector> inputs, const ChannelSpec& spec)
{
    {
        std::vector<RunVector> sorted(inputs);
        std::sort(sorted.begin(), sorted.end());
        if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
            throw Error(ErrorKind::duplicate_input, "input " + dup->to_string() + " listed twice");
    }
    const std::size_t n = inputs.size();
    for (const auto& x : inputs)
        if (x.size() != inputs.front().size())
            throw Error(ErrorKind::dimension_mismatch, "all inputs must share k");

    std::vector<Bitset> adjacency(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (indistinguishable(inputs[i], inputs[j], spec)) {
                adjacency[i].set(j);
                adjacency[j].set(i);
            }
    return ConfusionGraph(std::move(inputs), std::move(adjacency));
}

} // namespace ppmzero

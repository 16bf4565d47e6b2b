#pragma once

/**
 * @file core.hpp
 * @brief Domain types shared by every module: run vectors, channel
 * parameters, codebooks and input enumeration.
 *
 * A transmitted PPM frame with k pulses in M bins is represented by its
 * runs (x_1, ..., x_k): x_i is the number of bins between pulse i-1 and
 * pulse i, with pulse 0 at the frame origin. Runs are positive and sum to
 * at most M, so there are exactly binomial(M, k) inputs.
 */

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppmzero/error.hpp"
#include "ppmzero/rational.hpp"

namespace ppmzero {

using Run = std::int64_t;

class RunVector {
public:
    RunVector(std::vector<Run> runs, Run frame) : runs_(std::move(runs)), frame_(frame)
    {
        if (runs_.empty())
            throw Error(ErrorKind::invalid_argument, "a run vector needs at least one run");
        if (frame_ < 1)
            throw Error(ErrorKind::invalid_argument, "frame must be positive");
        Run total = 0;
        for (Run r : runs_) {
            if (r < 1 || r > frame_)
                throw Error(ErrorKind::invalid_argument,
                            "run " + std::to_string(r) + " outside [1, " + std::to_string(frame_) + "]");
            total += r;
        }
        if (total > frame_)
            throw Error(ErrorKind::invalid_argument,
                        "runs sum to " + std::to_string(total) + " > frame " + std::to_string(frame_));
        sum_ = total;
    }

    std::size_t size() const noexcept { return runs_.size(); }
    std::span<const Run> runs() const noexcept { return runs_; }
    Run operator[](std::size_t i) const { return runs_[i]; }
    Run frame() const noexcept { return frame_; }
    Run sum() const noexcept { return sum_; }

    /// d * x, or nothing when the scaled vector leaves the frame.
    std::optional<RunVector> scaled(Run d) const
    {
        if (d < 1 || sum_ > frame_ / d)
            return std::nullopt;
        std::vector<Run> out(runs_);
        for (Run& r : out)
            r *= d;
        return RunVector(std::move(out), frame_);
    }

    /// Same runs in a different frame (frame must still contain them).
    RunVector with_frame(Run frame) const { return RunVector(runs_, frame); }

    friend bool operator==(const RunVector&, const RunVector&) = default;
    friend auto operator<=>(const RunVector& a, const RunVector& b)
    {
        if (auto c = a.runs_ <=> b.runs_; c != 0)
            return c;
        return a.frame_ <=> b.frame_;
    }

    /// Space-separated runs, e.g. "3 2".
    std::string to_string() const
    {
        std::string out;
        for (std::size_t i = 0; i < runs_.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(runs_[i]);
        }
        return out;
    }

    static RunVector parse(std::string_view line, Run frame)
    {
        std::istringstream in{std::string(line)};
        std::vector<Run> runs;
        std::string token;
        while (in >> token) {
            Run v = 0;
            try {
                std::size_t used = 0;
                v = std::stoll(token, &used);
                if (used != token.size())
                    throw Error(ErrorKind::parse, "bad run '" + token + "'");
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::parse, "bad run '" + token + "'");
            }
            runs.push_back(v);
        }
        if (runs.empty())
            throw Error(ErrorKind::parse, "empty run vector line");
        return RunVector(std::move(runs), frame);
    }

private:
    std::vector<Run> runs_;
    Run frame_;
    Run sum_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const RunVector& x) { return os << '(' << x.to_string() << ')'; }

/// Jitter ratio xi = b/a and drift ratio gamma = T2/T1, both >= 1.
/// Bounds are normalized to T in [1, gamma] and Z_i in [1, xi].
class ChannelSpec {
public:
    ChannelSpec(Rational xi, ExtendedRational gamma) : xi_(xi), gamma_(gamma)
    {
        if (xi_ < Rational(1))
            throw Error(ErrorKind::invalid_argument, "xi must be >= 1, got " + xi_.to_string());
        if (gamma_ < Rational(1))
            throw Error(ErrorKind::invalid_argument, "gamma must be >= 1, got " + gamma_.to_string());
    }

    static ChannelSpec parse(std::string_view xi, std::string_view gamma)
    {
        return ChannelSpec(Rational::parse(xi), ExtendedRational::parse(gamma));
    }

    const Rational& xi() const noexcept { return xi_; }
    const ExtendedRational& gamma() const noexcept { return gamma_; }

    bool has_jitter() const { return xi_ != Rational(1); }
    bool drift_unbounded() const noexcept { return gamma_.is_infinite(); }
    bool has_drift() const { return gamma_.is_infinite() || gamma_.value() != Rational(1); }

    friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;

private:
    Rational xi_;
    ExtendedRational gamma_;
};

inline std::ostream& operator<<(std::ostream& os, const ChannelSpec& s)
{
    return os << "xi=" << s.xi() << " gamma=" << s.gamma();
}

enum class Regime {
    gcd,
    bounded_drift,
    jitter,
    jitter_unbounded_drift,
    jitter_bounded_drift,
    perfect_sync,
    custom,
};

constexpr std::string_view to_string(Regime r) noexcept
{
    switch (r) {
    case Regime::gcd: return "gcd";
    case Regime::bounded_drift: return "bounded-drift";
    case Regime::jitter: return "jitter";
    case Regime::jitter_unbounded_drift: return "jitter-unbounded-drift";
    case Regime::jitter_bounded_drift: return "jitter-bounded-drift";
    case Regime::perfect_sync: return "perfect-sync";
    case Regime::custom: return "custom";
    }
    return "custom";
}

inline Regime parse_regime(std::string_view text)
{
    for (Regime r : {Regime::gcd, Regime::bounded_drift, Regime::jitter, Regime::jitter_unbounded_drift,
                     Regime::jitter_bounded_drift, Regime::perfect_sync, Regime::custom}) {
        if (to_string(r) == text)
            return r;
    }
    throw Error(ErrorKind::parse, "unknown regime '" + std::string(text) + "'");
}

/// A set of codewords for a fixed (k, M), kept sorted and duplicate free.
class Codebook {
public:
    Codebook(std::size_t k, Run frame, ChannelSpec spec, Regime regime, std::vector<RunVector> codewords)
        : k_(k), frame_(frame), spec_(std::move(spec)), regime_(regime), codewords_(std::move(codewords))
    {
        if (k_ < 1 || frame_ < 1)
            throw Error(ErrorKind::invalid_argument, "codebook needs k >= 1 and M >= 1");
        for (const auto& x : codewords_) {
            if (x.size() != k_)
                throw Error(ErrorKind::dimension_mismatch,
                            "codeword " + x.to_string() + " does not have k=" + std::to_string(k_) + " runs");
            if (x.frame() != frame_)
                throw Error(ErrorKind::dimension_mismatch, "codeword " + x.to_string() + " has a different frame");
        }
        std::sort(codewords_.begin(), codewords_.end());
        if (auto dup = std::adjacent_find(codewords_.begin(), codewords_.end()); dup != codewords_.end())
            throw Error(ErrorKind::duplicate_input, "codeword " + dup->to_string() + " appears twice");
    }

    std::size_t k() const noexcept { return k_; }
    Run frame() const noexcept { return frame_; }
    const ChannelSpec& spec() const noexcept { return spec_; }
    Regime regime() const noexcept { return regime_; }
    std::span<const RunVector> codewords() const& noexcept { return codewords_; }
    std::span<const RunVector> codewords() const&& = delete;
    std::size_t size() const noexcept { return codewords_.size(); }
    bool empty() const noexcept { return codewords_.empty(); }

    bool contains(const RunVector& x) const { return std::binary_search(codewords_.begin(), codewords_.end(), x); }

    bool is_subset_of(const Codebook& other) const
    {
        return std::includes(other.codewords_.begin(), other.codewords_.end(), codewords_.begin(), codewords_.end());
    }

    bool same_codewords(const Codebook& other) const { return codewords_ == other.codewords_; }

private:
    std::size_t k_;
    Run frame_;
    ChannelSpec spec_;
    Regime regime_;
    std::vector<RunVector> codewords_;
};

/// u_i = x_i / x_1 for i = 2..k, in lowest terms.
struct RatioVector {
    std::vector<Rational> ratios;

    friend bool operator==(const RatioVector&, const RatioVector&) = default;
    friend auto operator<=>(const RatioVector& a, const RatioVector& b)
    {
        return std::lexicographical_compare_three_way(a.ratios.begin(), a.ratios.end(), b.ratios.begin(),
                                                      b.ratios.end());
    }
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i; // exact: acc * (n-k+i) is divisible by i at this point
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorKind::overflow, "binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

/// All k-run vectors with sum <= M, in lexicographic order.
inline std::vector<RunVector> enumerate_inputs(std::size_t k, Run frame)
{
    if (k < 1)
        throw Error(ErrorKind::invalid_argument, "k must be >= 1");
    if (frame < static_cast<Run>(k))
        throw Error(ErrorKind::empty_domain,
                    "no inputs with k=" + std::to_string(k) + " runs in a frame of " + std::to_string(frame));
    std::vector<RunVector> out;
    out.reserve(binomial(static_cast<std::uint64_t>(frame), k));
    std::vector<Run> runs(k, 1);
    // Odometer over runs in lexicographic order: advance the last position
    // that can still grow, reset everything after it to 1.
    for (;;) {
        out.emplace_back(runs, frame);
        Run total = std::accumulate(runs.begin(), runs.end(), Run{0});
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            Run tail = static_cast<Run>(k - pos - 1); // minimum sum of the later runs
            Run prefix = total;
            for (std::size_t j = pos; j < k; ++j)
                prefix -= runs[j];
            if (prefix + runs[pos] + 1 + tail <= frame) {
                ++runs[pos];
                for (std::size_t j = pos + 1; j < k; ++j)
                    runs[j] = 1;
                break;
            }
            if (pos == 0)
                return out;
        }
    }
}

inline Run gcd_of(const RunVector& x)
{
    Run g = 0;
    for (Run r : x.runs())
        g = std::gcd(g, r);
    return g;
}

inline RatioVector ratio_vector(const RunVector& x)
{
    if (x.size() < 2)
        throw Error(ErrorKind::undefined_ratios, "ratios need at least two runs");
    RatioVector u;
    u.ratios.reserve(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i)
        u.ratios.emplace_back(x[i], x[0]);
    return u;
}

inline double rate_bits(std::size_t codebook_size)
{
    if (codebook_size == 0)
        throw Error(ErrorKind::invalid_argument, "rate of an empty codebook is undefined");
    return std::log2(static_cast<double>(codebook_size));
}

/// log2 |C| in bits per frame.
inline double rate_bits(const Codebook& c) { return rate_bits(c.size()); }

} // namespace ppmzero

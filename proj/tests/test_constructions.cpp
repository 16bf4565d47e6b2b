#include <gtest/gtest.h>

#include <set>

#include "ppmzero/constructions.hpp"
#include "ppmzero/oracle.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"

using namespace ppmzero;

namespace {

RunVector rv(std::vector<ppmzero::Run> runs, ppmzero::Run frame) { return RunVector(std::move(runs), frame); }

std::vector<ppmzero::Run> multipliers_of(const Chain& c) { return c.multipliers; }

const std::vector<Rational> gammas{Rational(1), Rational(3, 2), Rational(7, 4), Rational(4)};
const std::vector<Rational> xis{Rational(1), Rational(21, 20), Rational(3, 2), Rational(2)};

} // namespace

TEST(CodeGcd, Examples)
{
    Codebook c = code_gcd(2, 65);
    EXPECT_EQ(c.size(), 1307u);
    EXPECT_NEAR(rate_bits(c), 10.352, 1e-3);
    EXPECT_EQ(c.regime(), Regime::gcd);
    EXPECT_TRUE(c.spec().drift_unbounded());

    Codebook small = code_gcd(2, 4);
    std::vector<RunVector> want{rv({1, 1}, 4), rv({1, 2}, 4), rv({1, 3}, 4), rv({2, 1}, 4), rv({3, 1}, 4)};
    EXPECT_TRUE(std::equal(small.codewords().begin(), small.codewords().end(), want.begin(), want.end()));
    EXPECT_NEAR(rate_bits(small), 2.3219, 1e-4);

    EXPECT_EQ(code_gcd(2, 2).size(), 1u);
    EXPECT_EQ(code_gcd(3, 8).size(), 52u);
    EXPECT_ERROR_KIND(code_gcd(1, 10), ErrorKind::unsupported_regime);
    EXPECT_ERROR_KIND(code_gcd(3, 2), ErrorKind::empty_domain);
}

TEST(CodeGcd, SizeIsTotientSumForPairs)
{
    for (ppmzero::Run m = 2; m <= 65; ++m)
        EXPECT_EQ(code_gcd(2, m).size(), oracle::totient_sum(static_cast<std::uint64_t>(m))) << "M=" << m;
}

TEST(CodeGcd, MatchesBruteForceFilter)
{
    for (std::size_t k = 2; k <= 3; ++k)
        for (ppmzero::Run m = static_cast<ppmzero::Run>(k); m <= 16; ++m) {
            std::size_t count = 0;
            for (const auto& t : oracle::all_tuples(k, m))
                count += oracle::tuple_gcd(t) == 1 ? 1 : 0;
            EXPECT_EQ(code_gcd(k, m).size(), count);
        }
}

TEST(MultiplesChain, Examples)
{
    EXPECT_EQ(multipliers_of(multiples_chain_of(rv({1, 1}, 65), Rational(7, 4), 65)),
              (std::vector<ppmzero::Run>{1, 2, 4, 8, 15, 27}));
    EXPECT_EQ(multiples_chain(rv({1, 1}, 65), Rational(7, 4), 65).size(), 6u);
    EXPECT_EQ(multipliers_of(multiples_chain_of(rv({1, 2}, 65), Rational(2), 65)), (std::vector<ppmzero::Run>{1, 3, 7, 15}));
    EXPECT_EQ(multipliers_of(multiples_chain_of(rv({1, 1}, 6), Rational(1), 6)), (std::vector<ppmzero::Run>{1, 2, 3}));
    EXPECT_ERROR_KIND(multiples_chain(rv({2, 4}, 65), Rational(2), 65), ErrorKind::precondition);
}

TEST(MultiplesChain, IntegralProductStepsPastIt)
{
    // step 2 from 3 gives exactly 6, which is not strictly greater; next is 7
    EXPECT_EQ(multipliers_of(multiples_chain_of(rv({1}, 100), Rational(2), 100)),
              (std::vector<ppmzero::Run>{1, 3, 7, 15, 31, 63}));
}

TEST(ChainProperty, GapAndMaximality)
{
    const Codebook gcd30 = code_gcd(2, 30);
    for (const auto& step : {Rational(1), Rational(21, 20), Rational(3, 2), Rational(7, 4), Rational(2),
                             Rational(21, 10), Rational(4), Rational(9, 4)})
        for (const auto& base : gcd30.codewords()) {
            Chain c = multiples_chain_of(base, step, 30);
            ASSERT_EQ(c.multipliers.front(), 1);
            EXPECT_EQ(c.step_ratio, step);
            for (std::size_t i = 1; i < c.multipliers.size(); ++i)
                EXPECT_GT(Rational(c.multipliers[i], c.multipliers[i - 1]), step);
            for (const auto& v : c.vectors())
                EXPECT_LE(v.sum(), 30);
            // the recurrence picks the smallest admissible next multiplier each time
            EXPECT_EQ(c.multipliers, oracle::chain_by_search(step, 30 / base.sum()));
            // any skipped integer breaks the gap to a neighbour, or the frame
            std::set<ppmzero::Run> taken(c.multipliers.begin(), c.multipliers.end());
            for (ppmzero::Run d = 1; d * base.sum() <= 30; ++d) {
                if (taken.count(d))
                    continue;
                auto above = taken.upper_bound(d);
                auto below = std::prev(taken.lower_bound(d));
                bool gap_below = Rational(d, *below) > step;
                bool gap_above = above == taken.end() || Rational(*above, d) > step;
                EXPECT_FALSE(gap_below && gap_above) << "multiplier " << d << " could be inserted";
            }
        }
}

TEST(CodeBoundedDrift, Examples)
{
    EXPECT_NEAR(rate_bits(code_bounded_drift(2, 65, Rational(7, 4))), 10.7616, 5e-4);
    Codebook sync = code_bounded_drift(2, 65, Rational(1));
    EXPECT_EQ(sync.size(), 2080u);
    EXPECT_NEAR(rate_bits(sync), 11.0224, 1e-4);
    Codebook wide = code_bounded_drift(2, 65, Rational(64));
    EXPECT_TRUE(wide.same_codewords(code_gcd(2, 65)));
    EXPECT_NEAR(rate_bits(code_bounded_drift(2, 65, Rational(8))), 10.3707, 1e-3);
    EXPECT_ERROR_KIND(code_bounded_drift(1, 65, Rational(2)), ErrorKind::unsupported_regime);
    EXPECT_ERROR_KIND(code_bounded_drift(2, 65, Rational(1, 2)), ErrorKind::invalid_argument);
}

TEST(JitterChain, Examples)
{
    EXPECT_EQ(jitter_chain(65, Rational(2)), (std::vector<ppmzero::Run>{1, 3, 7, 15, 31, 63}));
    std::vector<ppmzero::Run> all(65);
    std::iota(all.begin(), all.end(), ppmzero::Run{1});
    EXPECT_EQ(jitter_chain(65, Rational(1)), all);
    EXPECT_EQ(jitter_chain(5, Rational(3)), (std::vector<ppmzero::Run>{1, 4}));
    EXPECT_EQ(jitter_chain(1, Rational(2)), (std::vector<ppmzero::Run>{1}));
}

TEST(CodeJitter, Examples)
{
    EXPECT_EQ(code_jitter(2, 65, Rational(2)).size(), 27u);
    Codebook none = code_jitter(2, 65, Rational(1));
    EXPECT_EQ(none.size(), 2080u);
    EXPECT_NEAR(rate_bits(code_jitter(2, 65, Rational(51, 50))), 10.9425, 1e-3);
    EXPECT_EQ(code_jitter(1, 65, Rational(2)).size(), 6u);
}

TEST(CodeJitter, CountMatchesNestedLoops)
{
    for (const auto& xi : xis)
        for (ppmzero::Run m = 2; m <= 30; ++m) {
            auto levels = oracle::chain_by_search(xi, m);
            std::size_t count = 0;
            for (ppmzero::Run a : levels)
                for (ppmzero::Run b : levels)
                    count += a + b <= m ? 1 : 0;
            EXPECT_EQ(code_jitter(2, m, xi).size(), count);
        }
}

TEST(RatioSet, Examples)
{
    EXPECT_EQ(ratio_set(3), (std::vector<Rational>{Rational(1, 2), Rational(1), Rational(2)}));
    EXPECT_EQ(ratio_set(5), (std::vector<Rational>{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                                   Rational(1), Rational(3, 2), Rational(2), Rational(3), Rational(4)}));
    auto u = ratio_set(65);
    EXPECT_EQ(u.size(), 1307u);
    EXPECT_TRUE(std::is_sorted(u.begin(), u.end()));
    EXPECT_TRUE(std::adjacent_find(u.begin(), u.end()) == u.end());
    EXPECT_ERROR_KIND(ratio_set(1), ErrorKind::empty_domain);
}

TEST(CodeJitterUnboundedDrift, Examples)
{
    Codebook c = code_jitter_unbounded_drift(5, Rational(3, 2));
    std::vector<RunVector> want{rv({1, 2}, 5), rv({3, 2}, 5), rv({4, 1}, 5)};
    EXPECT_TRUE(std::equal(c.codewords().begin(), c.codewords().end(), want.begin(), want.end()));
    EXPECT_TRUE(code_jitter_unbounded_drift(65, Rational(1)).same_codewords(code_gcd(2, 65)));
    Codebook seven = code_jitter_unbounded_drift(65, Rational(103, 100));
    EXPECT_EQ(seven.size(), 128u);
    EXPECT_EQ(rate_bits(seven), 7.0);
    EXPECT_NEAR(rate_bits(code_jitter_unbounded_drift(65, Rational(51, 50))), 7.5236, 1e-3);
}

TEST(CodeJitterUnboundedDrift, GreedyGapsAreStrictAndTight)
{
    for (const auto& xi : xis)
        for (ppmzero::Run m = 2; m <= 30; ++m) {
            auto u = ratio_set(m);
            std::vector<Rational> picked;
            const Codebook code = code_jitter_unbounded_drift(m, xi);
            for (const auto& x : code.codewords())
                picked.emplace_back(x[1], x[0]);
            std::sort(picked.begin(), picked.end());
            ASSERT_EQ(picked.front(), Rational(1, m - 1));
            for (std::size_t i = 1; i < picked.size(); ++i) {
                EXPECT_GT(picked[i], xi * xi * picked[i - 1]);
                // nothing in U strictly between the gap threshold and the pick
                for (const auto& v : u)
                    EXPECT_FALSE(v > xi * xi * picked[i - 1] && v < picked[i]);
            }
            for (const auto& v : u)
                EXPECT_FALSE(v > xi * xi * picked.back());
        }
}

TEST(CodeJitterBoundedDrift, Examples)
{
    EXPECT_TRUE(code_jitter_bounded_drift(65, Rational(1), Rational(7, 4))
                    .same_codewords(code_bounded_drift(2, 65, Rational(7, 4))));
    EXPECT_NEAR(rate_bits(code_jitter_bounded_drift(65, Rational(1), Rational(7, 4))), 10.76155, 1e-4);

    Codebook two = code_jitter_bounded_drift(65, Rational(2), Rational(1));
    EXPECT_TRUE(verify_zero_error(two, two.spec()).zero_error());
    EXPECT_TRUE(code_jitter_unbounded_drift(65, Rational(2)).is_subset_of(two));

    Codebook small = code_jitter_bounded_drift(5, Rational(3, 2), Rational(1));
    EXPECT_TRUE(small.same_codewords(code_jitter_unbounded_drift(5, Rational(3, 2))));
    EXPECT_EQ(small.size(), 3u);
}

TEST(BestAchievableRate, Examples)
{
    const Rational g(7, 4);
    std::vector<Rational> one{Rational(1)};
    EXPECT_NEAR(best_achievable_rate(65, Rational(1), g, one), 10.76155, 1e-4);
    auto grid = rational_grid(Rational(101, 100), Rational(11, 10), Rational(1, 1000));
    EXPECT_EQ(grid.size(), 91u);
    EXPECT_NEAR(best_achievable_rate(65, Rational(101, 100), g, grid), 9.1007, 1e-3);
    std::vector<Rational> self{Rational(103, 100)};
    EXPECT_EQ(best_achievable_rate(65, Rational(103, 100), g, self),
              rate_bits(code_jitter_bounded_drift(65, Rational(103, 100), g)));
    EXPECT_ERROR_KIND(best_achievable_rate(65, Rational(1), g, {}), ErrorKind::invalid_argument);
    std::vector<Rational> below{Rational(1)};
    EXPECT_ERROR_KIND(best_achievable_rate(65, Rational(2), g, below), ErrorKind::precondition);
}

TEST(RationalGrid, InclusiveExactSteps)
{
    auto g = rational_grid(Rational(1), Rational(11, 10), Rational(1, 1000));
    EXPECT_EQ(g.size(), 101u);
    EXPECT_EQ(g.back(), Rational(11, 10));
    EXPECT_ERROR_KIND(rational_grid(Rational(1), Rational(2), Rational(0)), ErrorKind::invalid_argument);
    EXPECT_ERROR_KIND(rational_grid(Rational(2), Rational(1), Rational(1)), ErrorKind::invalid_argument);
}

TEST(Baselines, Examples)
{
    Codebook p = perfect_sync_code(2, 65);
    EXPECT_EQ(p.size(), 2080u);
    EXPECT_NEAR(rate_bits(perfect_sync_code(3, 8)), 5.8074, 1e-4);
    EXPECT_EQ(perfect_sync_code(3, 8).size(), 56u);
    EXPECT_EQ(perfect_sync_code(1, 1).size(), 1u);
    EXPECT_EQ(naive_rate(2, 65), 6.0);
    EXPECT_NEAR(naive_rate(3, 16), 6.7142, 1e-4);
    EXPECT_EQ(naive_rate(1, 9), 0.0);
    EXPECT_ERROR_KIND(naive_rate(3, 2), ErrorKind::empty_domain);
}

TEST(ConstructionProperty, Nesting)
{
    for (ppmzero::Run m = 2; m <= 30; ++m) {
        for (const auto& xi : xis)
            EXPECT_TRUE(code_jitter_unbounded_drift(m, xi).is_subset_of(code_gcd(2, m)));
        for (std::size_t k = 2; k <= 3; ++k)
            if (m >= static_cast<ppmzero::Run>(k)) {
                for (const auto& g : gammas)
                    EXPECT_TRUE(code_gcd(k, m).is_subset_of(code_bounded_drift(k, m, g)));
            }
    }
}

TEST(ConstructionProperty, SizesShrinkAsChannelsWorsen)
{
    for (ppmzero::Run m = 2; m <= 30; ++m) {
        for (std::size_t k = 2; k <= 3; ++k) {
            if (m < static_cast<ppmzero::Run>(k))
                continue;
            for (std::size_t i = 1; i < gammas.size(); ++i)
                EXPECT_LE(code_bounded_drift(k, m, gammas[i]).size(), code_bounded_drift(k, m, gammas[i - 1]).size());
            for (std::size_t i = 1; i < xis.size(); ++i)
                EXPECT_LE(code_jitter(k, m, xis[i]).size(), code_jitter(k, m, xis[i - 1]).size());
        }
        for (std::size_t i = 1; i < xis.size(); ++i)
            EXPECT_LE(code_jitter_unbounded_drift(m, xis[i]).size(), code_jitter_unbounded_drift(m, xis[i - 1]).size());
    }
}

TEST(ConstructionProperty, Degenerations)
{
    for (ppmzero::Run m = 2; m <= 20; ++m) {
        for (std::size_t k = 2; k <= 3; ++k) {
            if (m < static_cast<ppmzero::Run>(k))
                continue;
            EXPECT_TRUE(code_bounded_drift(k, m, Rational(1)).same_codewords(perfect_sync_code(k, m)));
            EXPECT_TRUE(code_jitter(k, m, Rational(1)).same_codewords(perfect_sync_code(k, m)));
        }
        EXPECT_TRUE(code_jitter_unbounded_drift(m, Rational(1)).same_codewords(code_gcd(2, m)));
        for (const auto& g : gammas)
            EXPECT_TRUE(code_jitter_bounded_drift(m, Rational(1), g).same_codewords(code_bounded_drift(2, m, g)));
    }
}

TEST(Construct, AutoRegimeSelection)
{
    auto inf = ExtendedRational::infinity();
    EXPECT_EQ(auto_regime(ChannelSpec(1, inf)), Regime::gcd);
    EXPECT_EQ(auto_regime(ChannelSpec(1, Rational(7, 4))), Regime::bounded_drift);
    EXPECT_EQ(auto_regime(ChannelSpec(2, Rational(1))), Regime::jitter);
    EXPECT_EQ(auto_regime(ChannelSpec(2, inf)), Regime::jitter_unbounded_drift);
    EXPECT_EQ(auto_regime(ChannelSpec(2, Rational(7, 4))), Regime::jitter_bounded_drift);
    EXPECT_EQ(auto_regime(ChannelSpec(1, Rational(1))), Regime::bounded_drift);
}

TEST(Construct, DispatchAndRegimeChecks)
{
    auto inf = ExtendedRational::infinity();
    EXPECT_EQ(construct(Regime::gcd, 2, 65, ChannelSpec(1, inf)).size(), 1307u);
    EXPECT_EQ(construct(Regime::jitter_unbounded_drift, 2, 65, ChannelSpec(Rational(103, 100), inf)).size(), 128u);
    EXPECT_ERROR_KIND(construct(Regime::jitter_unbounded_drift, 3, 20, ChannelSpec(2, inf)),
                      ErrorKind::unsupported_regime);
    EXPECT_ERROR_KIND(construct(Regime::jitter_bounded_drift, 3, 20, ChannelSpec(2, Rational(2))),
                      ErrorKind::unsupported_regime);
    EXPECT_ERROR_KIND(construct(Regime::bounded_drift, 2, 20, ChannelSpec(1, inf)), ErrorKind::unsupported_regime);
    EXPECT_ERROR_KIND(construct(Regime::custom, 2, 20, ChannelSpec(1, inf)), ErrorKind::unsupported_regime);
    try {
        construct(Regime::gcd, 1, 20, ChannelSpec(1, inf));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("reliable communication is not possible"), std::string::npos);
    }
}

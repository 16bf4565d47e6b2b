#pragma once

/**
 * @file oracle.hpp
 * @brief Ground truth for small instances: the largest zero-error code is a
 * maximum independent set of the confusion graph.
 *
 * The solver is a plain branch and bound. It knows nothing about ratios,
 * chains or gcds. Vertices are ranked by descending degree (index breaks
 * ties); the search branches on the first remaining vertex in that rank,
 * tries "include" before "exclude", and only replaces the incumbent on a
 * strict improvement. The set returned is therefore the lexicographically
 * least maximum set in rank order, whatever the budget. Upper bounds come
 * from a greedy clique cover of the remaining candidates. Connected
 * components are solved independently.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ppmzero/bitset.hpp"
#include "ppmzero/core.hpp"
#include "ppmzero/distinguishability.hpp"

namespace ppmzero {

enum class MisStatus { exact, budget_exceeded };

constexpr std::string_view to_string(MisStatus s) noexcept
{
    return s == MisStatus::exact ? "EXACT" : "BUDGET_EXCEEDED";
}

struct SearchBudget {
    std::optional<std::chrono::duration<double>> time_limit;
    std::optional<std::uint64_t> node_limit;

    static SearchBudget seconds(double s) { return {std::chrono::duration<double>(s), std::nullopt}; }
    static SearchBudget nodes(std::uint64_t n) { return {std::nullopt, n}; }
    static SearchBudget unlimited() { return {}; }
};

struct MisResult {
    std::vector<std::size_t> vertices; // sorted original indices
    MisStatus status = MisStatus::exact;
    std::uint64_t nodes = 0;
};

namespace detail {

class MisSearch {
public:
    MisSearch(const ConfusionGraph& g, const SearchBudget& budget)
        : graph_(g), budget_(budget), start_(std::chrono::steady_clock::now())
    {
    }

    MisResult run()
    {
        const std::size_t n = graph_.size();
        std::vector<std::size_t> rank(n);
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        std::vector<std::size_t> degree(n);
        for (std::size_t v = 0; v < n; ++v)
            degree[v] = graph_.degree(v);
        std::stable_sort(rank.begin(), rank.end(),
                         [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });

        std::vector<std::size_t> position(n);
        for (std::size_t i = 0; i < n; ++i)
            position[rank[i]] = i;

        MisResult result;
        std::vector<bool> seen(n, false);
        for (std::size_t root : rank) {
            if (seen[root])
                continue;
            std::vector<std::size_t> component = collect_component(root, seen);
            std::sort(component.begin(), component.end(),
                      [&](std::size_t a, std::size_t b) { return position[a] < position[b]; });
            for (std::size_t v : solve_component(component))
                result.vertices.push_back(v);
        }
        std::sort(result.vertices.begin(), result.vertices.end());
        result.status = exceeded_ ? MisStatus::budget_exceeded : MisStatus::exact;
        result.nodes = nodes_;
        return result;
    }

private:
    std::vector<std::size_t> collect_component(std::size_t root, std::vector<bool>& seen) const
    {
        std::vector<std::size_t> component{root};
        seen[root] = true;
        for (std::size_t head = 0; head < component.size(); ++head) {
            const Bitset& nb = graph_.neighbours(component[head]);
            for (std::size_t u = nb.find_next(0); u != Bitset::npos; u = nb.find_next(u + 1))
                if (!seen[u]) {
                    seen[u] = true;
                    component.push_back(u);
                }
        }
        return component;
    }

    // `order` lists original vertex ids in branching order; local index i is order[i].
    std::vector<std::size_t> solve_component(const std::vector<std::size_t>& order)
    {
        const std::size_t m = order.size();
        local_adj_.assign(m, Bitset(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (graph_.adjacent(order[i], order[j])) {
                    local_adj_[i].set(j);
                    local_adj_[j].set(i);
                }
        best_.clear();
        current_.clear();
        Bitset candidates(m);
        candidates.set_all();
        expand(candidates);
        if (exceeded_) {
            // unexplored components still contribute a greedy lower bound
            std::vector<std::size_t> greedy;
            for (std::size_t v = candidates.find_next(0); v != Bitset::npos; v = candidates.find_next(v + 1)) {
                greedy.push_back(v);
                candidates.subtract(local_adj_[v]);
            }
            if (greedy.size() > best_.size())
                best_ = std::move(greedy);
        }
        std::vector<std::size_t> out;
        for (std::size_t i : best_)
            out.push_back(order[i]);
        return out;
    }

    bool out_of_budget()
    {
        if (exceeded_)
            return true;
        if (budget_.node_limit && nodes_ >= *budget_.node_limit)
            exceeded_ = true;
        else if (budget_.time_limit && (nodes_ & 1023) == 1 &&
                 std::chrono::steady_clock::now() - start_ > *budget_.time_limit)
            exceeded_ = true;
        return exceeded_;
    }

    // Greedy clique cover size: each clique can hold at most one chosen vertex.
    std::size_t clique_cover_bound(const Bitset& candidates)
    {
        cover_.clear();
        for (std::size_t v = candidates.find_next(0); v != Bitset::npos; v = candidates.find_next(v + 1)) {
            bool placed = false;
            for (auto& common : cover_) {
                if (common.test(v)) {
                    common &= local_adj_[v];
                    placed = true;
                    break;
                }
            }
            if (!placed)
                cover_.push_back(local_adj_[v]);
        }
        return cover_.size();
    }

    void expand(Bitset candidates)
    {
        ++nodes_;
        if (candidates.none()) {
            if (current_.size() > best_.size())
                best_ = current_;
            return;
        }
        if (out_of_budget())
            return;
        if (current_.size() + candidates.count() <= best_.size())
            return;
        if (current_.size() + clique_cover_bound(candidates) <= best_.size())
            return;

        std::size_t v = candidates.find_next(0);

        Bitset with_v(candidates);
        with_v.reset(v);
        with_v.subtract(local_adj_[v]);
        current_.push_back(v);
        expand(std::move(with_v));
        current_.pop_back();

        candidates.reset(v);
        expand(std::move(candidates));
    }

    const ConfusionGraph& graph_;
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
    std::vector<Bitset> local_adj_;
    std::vector<Bitset> cover_;
    std::vector<std::size_t> best_;
    std::vector<std::size_t> current_;
};

} // namespace detail

/// Exact MIS by branch and bound; on budget exhaustion returns the best set found.
inline MisResult max_independent_set(const ConfusionGraph& g, const SearchBudget& budget = SearchBudget::unlimited())
{
    return detail::MisSearch(g, budget).run();
}

struct OracleResult {
    Codebook code;
    MisStatus status;
};

/// Largest zero-error code for (k, M, spec) by exhaustive MIS over all inputs.
inline OracleResult optimal_code_bruteforce(std::size_t k, Run frame, const ChannelSpec& spec,
                                            const SearchBudget& budget = SearchBudget::unlimited())
{
    ConfusionGraph g = confusion_graph(enumerate_inputs(k, frame), spec);
    MisResult mis = max_independent_set(g, budget);
    std::vector<RunVector> words;
    for (std::size_t v : mis.vertices)
        words.push_back(g.vertex(v));
    return {Codebook(k, frame, spec, Regime::custom, std::move(words)), mis.status};
}

struct ZeroErrorReport {
    std::vector<std::pair<RunVector, RunVector>> violations;
    bool zero_error() const noexcept { return violations.empty(); }
};

/// Every unordered pair of distinct codewords checked with the general predicate.
inline ZeroErrorReport verify_zero_error(const Codebook& c, const ChannelSpec& spec)
{
    ZeroErrorReport report;
    auto words = c.codewords();
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            if (indistinguishable(words[i], words[j], spec))
                report.violations.emplace_back(words[i], words[j]);
    return report;
}

} // namespace ppmzero

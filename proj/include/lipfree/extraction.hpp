#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace lipfree {

enum class ExtractionMode { equidistant, pairs };

template <Scalar S>
struct SeparatedExtraction {
    S a{};
    std::vector<int> sequence;                // equidistant mode
    std::vector<std::pair<int, int>> pairs;   // pairs mode, (u_i, v_i) with u_1 = base
    std::vector<S> scales;                    // a_1, a_2, ... from the recursion (equidistant mode)

    bool empty() const { return sequence.size() < 2 && pairs.size() < 2; }
    std::size_t length() const { return std::max(sequence.size(), pairs.size()); }
};

/// a(i-1)/i - tol <= d(u_i,u_j) <= a(i+1)/i + tol for all i < j (1-based).
template <Scalar S>
bool check_equidistant_sequence(const FiniteMetricSpace<S>& space, const S& a, const std::vector<int>& seq,
                                const S& tol) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            const S idx(static_cast<long>(i + 1));
            const S& dist = space.d(seq[i], seq[j]);
            if (dist < a * (idx - 1) / idx - tol || dist > a * (idx + 1) / idx + tol) return false;
        }
    return true;
}

namespace detail {

template <Scalar S>
S min_dist_to(const FiniteMetricSpace<S>& space, int u, int v, int q) {
    return std::min(space.d(u, q), space.d(v, q));
}

// Conditions of pair i (1-based) against everything except later pairs.
template <Scalar S>
bool pair_admissible(const FiniteMetricSpace<S>& space, const S& a, std::size_t i, int u, int v,
                     const std::vector<std::pair<int, int>>& earlier, const S& tol) {
    const S idx(static_cast<long>(i));
    const S& duv = space.d(u, v);
    if (duv < a * (idx - 1) / idx - tol || duv > a * (idx + 1) / idx + tol) return false;
    const S isolation = a * (idx - 1) / (S(2) * idx) - tol;
    for (int q = 0; q < space.size(); ++q)
        if (q != u && q != v && min_dist_to(space, u, v, q) < isolation) return false;
    for (std::size_t j = 0; j < earlier.size(); ++j) {
        const S jdx(static_cast<long>(j + 1));
        const S bound = a * (jdx - 1) / jdx - tol;
        auto [x, y] = earlier[j];
        if (min_dist_to(space, x, y, u) < bound || min_dist_to(space, x, y, v) < bound) return false;
    }
    return true;
}

}  // namespace detail

/// All three separation conditions for the pair sequence, checked exhaustively.
template <Scalar S>
bool check_separated_pairs(const FiniteMetricSpace<S>& space, const S& a,
                           const std::vector<std::pair<int, int>>& pairs, const S& tol) {
    std::set<int> seen;
    for (auto [u, v] : pairs) {
        if (u == v || !seen.insert(u).second || !seen.insert(v).second) return false;
    }
    std::vector<std::pair<int, int>> earlier;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!detail::pair_admissible(space, a, i + 1, pairs[i].first, pairs[i].second, earlier, tol)) return false;
        earlier.push_back(pairs[i]);
    }
    return true;
}

namespace detail {

// Longest subsequence of `pool` (kept in order) satisfying the equidistant
// inequalities at scale a, chosen greedily.
template <Scalar S>
std::vector<int> greedy_equidistant(const FiniteMetricSpace<S>& space, const S& a, const std::vector<int>& pool,
                                    const S& tol) {
    std::vector<int> seq;
    for (int p : pool) {
        bool ok = true;
        for (std::size_t i = 0; i < seq.size() && ok; ++i) {
            const S idx(static_cast<long>(i + 1));
            const S& dist = space.d(seq[i], p);
            ok = dist >= a * (idx - 1) / idx - tol && dist <= a * (idx + 1) / idx + tol;
        }
        if (ok) seq.push_back(p);
    }
    return seq;
}

// The nested-set recursion: u_1 = base, a_n = m-th smallest distance from
// u_n to the remaining candidates, next candidates inside the window
// a_n(2n-1)/(2n) < d < a_n(2n+1)/(2n).
template <Scalar S>
std::pair<std::vector<int>, std::vector<S>> nested_recursion(const FiniteMetricSpace<S>& space, int threshold) {
    std::vector<int> seq{space.base()};
    std::vector<S> scales;
    std::vector<int> pool;
    for (int p = 0; p < space.size(); ++p)
        if (p != space.base()) pool.push_back(p);
    for (int n = 1; !pool.empty(); ++n) {
        const int u = seq.back();
        std::vector<S> dists;
        for (int p : pool) dists.push_back(space.d(u, p));
        std::sort(dists.begin(), dists.end());
        const auto m = std::min<std::size_t>(static_cast<std::size_t>(std::max(threshold, 1)), dists.size());
        const S an = dists[m - 1];
        scales.push_back(an);
        const S lo = an * S(2 * n - 1) / S(2 * n), hi = an * S(2 * n + 1) / S(2 * n);
        std::vector<int> next;
        for (int p : pool)
            if (space.d(u, p) > lo && space.d(u, p) < hi) next.push_back(p);
        if (next.empty()) break;
        seq.push_back(next.front());
        next.erase(next.begin());
        pool = std::move(next);
    }
    return {seq, scales};
}

template <Scalar S>
std::vector<std::pair<int, int>> greedy_pairs(const FiniteMetricSpace<S>& space, const S& a, const S& tol) {
    const int n = space.size();
    const int base = space.base();
    std::vector<std::pair<int, int>> tail;  // pairs 2, 3, ...
    std::vector<char> used(n, 0);
    used[base] = 1;
    for (;;) {
        // Pair 1 is (base, v_1); it constrains later pairs only through the
        // trivial bound a*0, so it is fixed after the tail.
        std::vector<std::pair<int, int>> earlier{{base, base}};
        earlier.insert(earlier.end(), tail.begin(), tail.end());
        const std::size_t i = tail.size() + 2;
        bool found = false;
        for (int u = 0; u < n && !found; ++u) {
            if (used[u]) continue;
            for (int v = u + 1; v < n && !found; ++v) {
                if (used[v]) continue;
                if (pair_admissible(space, a, i, u, v, earlier, tol)) {
                    tail.emplace_back(u, v);
                    used[u] = used[v] = 1;
                    found = true;
                }
            }
        }
        if (!found) break;
    }
    for (;;) {
        std::vector<std::pair<int, int>> out;
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            if (pair_admissible(space, a, 1, base, v, {}, tol)) {
                out.emplace_back(base, v);
                break;
            }
        }
        if (!out.empty()) {
            out.insert(out.end(), tail.begin(), tail.end());
            if (check_separated_pairs(space, a, out, tol)) return out;
        }
        if (tail.empty()) return {};
        used[tail.back().first] = used[tail.back().second] = 0;
        tail.pop_back();
    }
}

}  // namespace detail

/// Finite versions of the two sequence-extraction lemmas. Equidistant mode
/// runs the nested-set recursion (population threshold `threshold`,
/// default ceil(n/4)) and then selects the longest admissible subsequence
/// over candidate scales; pairs mode searches candidate scales greedily.
/// Results are re-verified exhaustively; an empty result means nothing of
/// length >= 2 was found.
template <Scalar S>
SeparatedExtraction<S> extract_separated_pairs(const FiniteMetricSpace<S>& space, const S& tolerance,
                                               ExtractionMode mode, std::optional<int> threshold = std::nullopt) {
    if (!(tolerance > S(0))) throw ArgumentError("extraction tolerance must be positive");
    SeparatedExtraction<S> best;
    if (space.size() < 2) return best;
    std::vector<S> candidates = space.distinct_distances();
    if (mode == ExtractionMode::equidistant) {
        const int m = threshold.value_or((space.size() + 3) / 4);
        auto [raw, scales] = detail::nested_recursion(space, m);
        best.scales = scales;
        std::vector<S> cand = scales;
        cand.insert(cand.end(), candidates.begin(), candidates.end());
        std::vector<int> all;
        all.push_back(space.base());
        for (int p = 0; p < space.size(); ++p)
            if (p != space.base()) all.push_back(p);
        for (const auto* pool : {&raw, &all})
            for (const S& a : cand) {
                auto seq = detail::greedy_equidistant(space, a, *pool, tolerance);
                if (seq.size() > best.sequence.size()) {
                    best.sequence = std::move(seq);
                    best.a = a;
                }
            }
        if (best.sequence.size() < 2 || !check_equidistant_sequence(space, best.a, best.sequence, tolerance))
            return SeparatedExtraction<S>{};
        return best;
    }
    for (const S& a : candidates) {
        auto pairs = detail::greedy_pairs(space, a, tolerance);
        if (pairs.size() > best.pairs.size()) {
            best.pairs = std::move(pairs);
            best.a = a;
        }
    }
    if (best.pairs.size() < 2 || !check_separated_pairs(space, best.a, best.pairs, tolerance))
        return SeparatedExtraction<S>{};
    return best;
}

}  // namespace lipfree

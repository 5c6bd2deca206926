#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metric_space.hpp"

namespace lipfree {

/// Pairs (u_i, v_i) together with sets A_i.
struct AnnuliFamily {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> sets;
};

template <Scalar S>
struct AnnuliHypothesisReport {
    bool disjoint = true;
    bool u_inside = true;
    bool earlier_points_outside = true;  // A_i misses u_j, v_j for j < i
    bool inequality = true;
    std::size_t quadruples = 0;
    S min_slack{};
    std::optional<std::vector<int>> violation;  // (i, u, v, x, y) 0-based i, or (i, j) for set failures
    std::string failure;

    bool ok() const { return disjoint && u_inside && inequality; }
    bool ok_with_order() const { return ok() && earlier_points_outside; }
};

/// Checks u_i in A_i, pairwise disjointness, and
/// d(u_i,x) + d(v_i,y) >= (1 - eps_i)(d(u_i,v_i) + d(x,y)) for all x, y outside A_i.
/// `eps_of` maps the 1-based pair index to eps_i.
template <Scalar S>
AnnuliHypothesisReport<S> check_annuli_hypothesis(const FiniteMetricSpace<S>& space, const AnnuliFamily& fam,
                                                  const std::function<S(int)>& eps_of) {
    if (fam.pairs.size() != fam.sets.size()) throw StructuralError("one set A_i is needed per pair");
    AnnuliHypothesisReport<S> rep;
    const int n = space.size();
    const auto k = fam.pairs.size();
    std::vector<int> owner(n, -1);
    auto note = [&](std::vector<int> w, std::string why) {
        if (!rep.violation) {
            rep.violation = std::move(w);
            rep.failure = std::move(why);
        }
    };
    for (std::size_t i = 0; i < k; ++i) {
        auto [u, v] = fam.pairs[i];
        space.require_point(u);
        space.require_point(v);
        if (u == v) throw ArgumentError("pair with equal points");
        std::vector<char> in(n, 0);
        for (int p : fam.sets[i]) {
            space.require_point(p);
            in[p] = 1;
            if (owner[p] >= 0 && owner[p] != static_cast<int>(i)) {
                rep.disjoint = false;
                note({owner[p], static_cast<int>(i), p}, "sets overlap");
            }
            owner[p] = static_cast<int>(i);
        }
        if (!in[u]) {
            rep.u_inside = false;
            note({static_cast<int>(i), u}, "u not in its set");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (in[fam.pairs[j].first] || in[fam.pairs[j].second]) rep.earlier_points_outside = false;
    }
    bool first = true;
    for (std::size_t i = 0; i < k; ++i) {
        auto [u, v] = fam.pairs[i];
        const S eps = eps_of(static_cast<int>(i + 1));
        require_open_unit(eps, "eps");
        std::vector<char> in(n, 0);
        for (int p : fam.sets[i]) in[p] = 1;
        for (int x = 0; x < n; ++x) {
            if (in[x]) continue;
            for (int y = 0; y < n; ++y) {
                if (in[y]) continue;
                auto c = check_annulus_inequality(space, eps, u, v, x, y);
                ++rep.quadruples;
                if (first || c.slack < rep.min_slack) {
                    rep.min_slack = c.slack;
                    first = false;
                }
                if (!c.holds) {
                    rep.inequality = false;
                    note({static_cast<int>(i), u, v, x, y}, "four-point inequality fails");
                }
            }
        }
    }
    return rep;
}

}  // namespace lipfree

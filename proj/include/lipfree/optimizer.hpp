#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lip_function.hpp"
#include "parallel.hpp"
#include "simplex.hpp"

namespace lipfree {

enum class Relation { le, ge };

template <Scalar S>
struct SideConstraint {
    FreeElement<S> coeffs;
    Relation rel;
    S bound;
};

/// maximize <objective, f> over f with f(base) = 0, f(p) - f(q) <= d(p,q)
/// for every ordered pair (individual pair bounds may be overridden or
/// removed) and the side constraints <coeffs, f> rel bound.
template <Scalar S>
struct LipBallProgram {
    SpacePtr<S> space;
    FreeElement<S> objective;
    std::vector<SideConstraint<S>> side;
    /// (p,q) -> replacement for the bound d(p,q); nullopt removes the constraint.
    std::map<std::pair<int, int>, std::optional<S>> pair_bounds;

    explicit LipBallProgram(FreeElement<S> obj) : space(obj.space()), objective(std::move(obj)) {}

    LipBallProgram& add(FreeElement<S> coeffs, Relation rel, S bound) {
        side.push_back({std::move(coeffs), rel, std::move(bound)});
        return *this;
    }

    /// Requires f(p) - f(q) <= bound in addition to the Lipschitz bound.
    LipBallProgram& tighten_pair(int p, int q, const S& bound) {
        auto& slot = pair_bounds[{p, q}];
        S cur = slot.value_or(space->d(p, q));
        slot = bound < cur ? bound : cur;
        return *this;
    }

    LipBallProgram& drop_pair(int p, int q) {
        pair_bounds[{p, q}] = std::nullopt;
        return *this;
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

/// Weight on one primal constraint in the dual certificate: pair (p,q) or
/// side constraint `side` (p = q = -1).
template <Scalar S>
struct DualWeight {
    int p = -1, q = -1;
    int side = -1;
    S weight;
};

template <Scalar S>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    S value{};
    std::optional<LipFunction<S>> argument;
    /// optimal: multipliers with Σ w·(constraint row) = objective and
    /// Σ w·bound = value. infeasible: a nonnegative combination with zero
    /// row and negative bound sum.
    std::vector<DualWeight<S>> dual;
    std::size_t pivots = 0;

    bool optimal() const { return status == LpStatus::optimal; }
};

namespace detail {

template <Scalar S>
struct ProgramLayout {
    std::vector<int> row_of;    // point -> row, -1 for the base
    std::vector<int> point_of;  // row -> point
    std::vector<LpColumn<S>> cols;
    std::vector<S> cost;
    std::vector<DualWeight<S>> meaning;  // per column; artificial columns carry side = -2
    std::vector<S> rhs;
    std::vector<int> basis;
};

template <Scalar S>
ProgramLayout<S> layout_program(const LipBallProgram<S>& prog) {
    const auto& space = *prog.space;
    for (const auto& sc : prog.side) require_same_space(prog.space, sc.coeffs.space());
    require_same_space(prog.space, prog.objective.space());
    for (const auto& [pq, b] : prog.pair_bounds) {
        space.require_point(pq.first);
        space.require_point(pq.second);
        if (pq.first == pq.second) throw StructuralError("pair bound on a diagonal pair");
    }
    ProgramLayout<S> L;
    const int n = space.size();
    L.row_of.assign(n, -1);
    for (int p = 0; p < n; ++p)
        if (p != space.base()) {
            L.row_of[p] = static_cast<int>(L.point_of.size());
            L.point_of.push_back(p);
        }
    const int r = static_cast<int>(L.point_of.size());
    L.rhs.assign(r, S(0));
    for (const auto& [p, w] : prog.objective.weights()) L.rhs[L.row_of[p]] = w;
    std::vector<int> star_plus(r, -1), star_minus(r, -1);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            S bound = space.d(p, q);
            if (auto it = prog.pair_bounds.find({p, q}); it != prog.pair_bounds.end()) {
                if (!it->second) continue;
                bound = *it->second;
            }
            LpColumn<S> col;
            col.plus = L.row_of[p];
            col.minus = L.row_of[q];
            const int j = static_cast<int>(L.cols.size());
            if (q == space.base()) star_plus[L.row_of[p]] = j;
            if (p == space.base()) star_minus[L.row_of[q]] = j;
            L.cols.push_back(std::move(col));
            L.cost.push_back(std::move(bound));
            L.meaning.push_back({p, q, -1, S(0)});
        }
    for (std::size_t k = 0; k < prog.side.size(); ++k) {
        const auto& sc = prog.side[k];
        const S sign = sc.rel == Relation::le ? S(1) : S(-1);
        LpColumn<S> col;
        col.general = true;
        for (const auto& [p, w] : sc.coeffs.weights()) col.entries.emplace_back(L.row_of[p], sign * w);
        L.cols.push_back(std::move(col));
        L.cost.push_back(sign * sc.bound);
        L.meaning.push_back({-1, -1, static_cast<int>(k), S(0)});
    }
    L.basis.assign(r, -1);
    for (int i = 0; i < r; ++i) {
        const bool nonneg = !(L.rhs[i] < S(0));
        const int star = nonneg ? star_plus[i] : star_minus[i];
        if (star >= 0) {
            L.basis[i] = star;
            continue;
        }
        LpColumn<S> art;
        art.general = true;
        art.artificial = true;
        art.entries.emplace_back(i, nonneg ? S(1) : S(-1));
        L.basis[i] = static_cast<int>(L.cols.size());
        L.cols.push_back(std::move(art));
        L.cost.push_back(S(0));
        L.meaning.push_back({-1, -1, -2, S(0)});
    }
    return L;
}

template <Scalar S>
std::vector<S> lift_values(const ProgramLayout<S>& L, int n, const std::vector<S>& y) {
    std::vector<S> vals(n, S(0));
    for (std::size_t i = 0; i < L.point_of.size(); ++i) vals[L.point_of[i]] = y[i];
    return vals;
}

template <Scalar S>
void verify_solution(const LipBallProgram<S>& prog, const LpSolution<S>& sol) {
    const auto& space = *prog.space;
    const auto& tol = space.tol();
    const auto& f = *sol.argument;
    auto fail = [](const std::string& what) { throw std::logic_error("LP post-check failed: " + what); };
    for (int p = 0; p < space.size(); ++p)
        for (int q = 0; q < space.size(); ++q) {
            if (p == q) continue;
            std::optional<S> bound = space.d(p, q);
            if (auto it = prog.pair_bounds.find({p, q}); it != prog.pair_bounds.end()) bound = it->second;
            if (bound && tol.gt(S(f(p) - f(q)), *bound))
                fail("pair (" + space.label(p) + "," + space.label(q) + ")");
        }
    for (std::size_t k = 0; k < prog.side.size(); ++k) {
        const auto& sc = prog.side[k];
        S lhs = f.apply(sc.coeffs);
        if (sc.rel == Relation::le ? tol.gt(lhs, sc.bound) : tol.lt(lhs, sc.bound))
            fail("side constraint " + std::to_string(k));
    }
    if (!tol.eq(f.apply(prog.objective), sol.value)) fail("objective value");
}

}  // namespace detail

/// Exact optimum of a Lipschitz-ball program. The dual (a transport problem
/// with extra columns for side constraints) is solved by revised simplex;
/// the simplex multipliers are the optimal function. Every optimal answer
/// is re-checked against all constraints before it is returned.
template <Scalar S>
LpSolution<S> solve_lip_ball(const LipBallProgram<S>& prog) {
    const auto& space = prog.space;
    const int n = space->size();
    LpSolution<S> sol;
    auto L = detail::layout_program(prog);
    const int r = static_cast<int>(L.point_of.size());
    detail::RevisedSimplex<S> simplex(r, L.cols, L.cost, L.rhs, space->tol().eps);
    simplex.set_initial_basis(L.basis);
    auto outcome = simplex.solve();
    sol.pivots = simplex.pivots();
    if (outcome == detail::SimplexOutcome::optimal) {
        sol.status = LpStatus::optimal;
        sol.value = simplex.objective();
        sol.argument.emplace(space, detail::lift_values(L, n, simplex.duals()));
        for (int i = 0; i < r; ++i) {
            const int j = simplex.basis()[i];
            if (L.cols[j].artificial || simplex.basic_values()[i] == S(0)) continue;
            auto w = L.meaning[j];
            w.weight = simplex.basic_values()[i];
            sol.dual.push_back(std::move(w));
        }
        detail::verify_solution(prog, sol);
        return sol;
    }
    if (outcome == detail::SimplexOutcome::unbounded) {
        // Dual unbounded: the ray is a Farkas certificate that the primal is empty.
        sol.status = LpStatus::infeasible;
        for (const auto& [j, w] : simplex.ray()) {
            if (L.cols[j].artificial) continue;
            auto m = L.meaning[j];
            m.weight = w;
            sol.dual.push_back(std::move(m));
        }
        return sol;
    }
    // Dual infeasible: primal is unbounded or empty; decide with a zero objective.
    LipBallProgram<S> probe = prog;
    probe.objective = FreeElement<S>(space);
    auto feas = solve_lip_ball(probe);
    sol.status = feas.optimal() ? LpStatus::unbounded : LpStatus::infeasible;
    if (!feas.optimal()) sol.dual = std::move(feas.dual);
    return sol;
}

/// Solves independent programs, possibly concurrently; results keep input order.
template <Scalar S>
std::vector<LpSolution<S>> solve_batch(const std::vector<LipBallProgram<S>>& progs, unsigned threads = 0) {
    std::vector<LpSolution<S>> out(progs.size());
    parallel_for(progs.size(), [&](std::size_t i) { out[i] = solve_lip_ball(progs[i]); }, threads);
    return out;
}

// ---------------------------------------------------------------------------
// primal transport

template <Scalar S>
struct TransportPlan {
    std::map<std::pair<int, int>, S> flow;  // (from, to) -> mass
    S cost{};
};

/// Optimal plan moving the positive part of mu onto the negative part, the
/// base point absorbing the imbalance. Successive shortest paths on the
/// bipartite residual graph (Bellman-Ford, so negative residual arcs are fine).
template <Scalar S>
TransportPlan<S> min_cost_transport(const FiniteMetricSpace<S>& space, const FreeElement<S>& mu) {
    TransportPlan<S> plan;
    plan.cost = S(0);
    const auto& tol = space.tol();
    std::vector<int> src, dst;
    std::vector<S> supply, demand;
    S total(0);
    for (const auto& [p, w] : mu.weights()) {
        total += w;
        if (w > S(0)) {
            src.push_back(p);
            supply.push_back(w);
        } else {
            dst.push_back(p);
            demand.push_back(-w);
        }
    }
    if (total > S(0)) {
        dst.push_back(space.base());
        demand.push_back(total);
    } else if (total < S(0)) {
        src.push_back(space.base());
        supply.push_back(-total);
    }
    const std::size_t ns = src.size(), nd = dst.size();
    std::vector<std::vector<S>> flow(ns, std::vector<S>(nd, S(0)));
    // Nodes: sources 0..ns-1, sinks ns..ns+nd-1.
    const std::size_t nodes = ns + nd;
    for (;;) {
        std::vector<std::optional<S>> dist(nodes);
        std::vector<int> prev(nodes, -1);
        for (std::size_t i = 0; i < ns; ++i)
            if (tol.positive(supply[i])) dist[i] = S(0);
        for (std::size_t round = 0; round < nodes; ++round) {
            bool changed = false;
            for (std::size_t i = 0; i < ns; ++i) {
                if (!dist[i]) continue;
                for (std::size_t j = 0; j < nd; ++j) {
                    S cand = *dist[i] + space.d(src[i], dst[j]);
                    auto& dj = dist[ns + j];
                    if (!dj || tol.lt(cand, *dj)) {
                        dj = cand;
                        prev[ns + j] = static_cast<int>(i);
                        changed = true;
                    }
                }
            }
            for (std::size_t j = 0; j < nd; ++j) {
                if (!dist[ns + j]) continue;
                for (std::size_t i = 0; i < ns; ++i) {
                    if (!tol.positive(flow[i][j])) continue;
                    S cand = *dist[ns + j] - space.d(src[i], dst[j]);
                    if (!dist[i] || tol.lt(cand, *dist[i])) {
                        dist[i] = cand;
                        prev[i] = static_cast<int>(ns + j);
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        int sink = -1;
        for (std::size_t j = 0; j < nd; ++j) {
            if (!tol.positive(demand[j]) || !dist[ns + j]) continue;
            if (sink < 0 || *dist[ns + j] < *dist[ns + sink]) sink = static_cast<int>(j);
        }
        if (sink < 0) break;
        // Walk back to a source that still has supply, collecting the bottleneck.
        S push = demand[sink];
        std::vector<int> path{static_cast<int>(ns) + sink};
        int node = static_cast<int>(ns) + sink;
        while (prev[node] >= 0) {
            int pn = prev[node];
            if (pn >= static_cast<int>(ns)) {  // backward arc sink pn -> source node
                const S& f = flow[node][pn - ns];
                if (f < push) push = f;
            }
            path.push_back(pn);
            node = pn;
        }
        if (supply[node] < push) push = supply[node];
        supply[node] -= push;
        demand[sink] -= push;
        for (std::size_t k = path.size() - 1; k > 0; --k) {
            int a = path[k], b = path[k - 1];
            if (a < static_cast<int>(ns))
                flow[a][b - ns] += push;
            else
                flow[b][a - ns] -= push;
        }
    }
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < nd; ++j)
            if (tol.positive(flow[i][j])) {
                plan.flow[{src[i], dst[j]}] = flow[i][j];
                plan.cost += flow[i][j] * space.d(src[i], dst[j]);
            }
    return plan;
}

// ---------------------------------------------------------------------------
// maximization over pairwise-witnessed distance constraints

template <Scalar S>
struct PairMaximum {
    LpStatus status = LpStatus::infeasible;
    S value{};
    std::pair<int, int> witness{-1, -1};
    std::optional<LipFunction<S>> argument;
    std::size_t pairs_considered = 0;  // pairs whose constraint is satisfiable
    std::size_t programs_solved = 0;
};

namespace detail {

template <Scalar S>
std::vector<std::pair<int, int>> ordered_pairs(const FiniteMetricSpace<S>& space) {
    std::vector<std::pair<int, int>> out;
    for (int p = 0; p < space.size(); ++p)
        for (int q = 0; q < space.size(); ++q)
            if (p != q) out.emplace_back(p, q);
    return out;
}

// g(p) - g(q) <= d(p,q) (f(m_pq) - threshold), i.e. (f - g)(m_pq) >= threshold.
template <Scalar S>
S witness_bound(const LipFunction<S>& f, int p, int q, const S& threshold) {
    const auto& space = *f.space();
    return space.d(p, q) * (f.eval({p, q}) - threshold);
}

}  // namespace detail

/// max over ordered pairs (p,q) of  max <objective, g>  over g in the ball
/// with (base_fn - g)(m_pq) >= threshold. The constraint is a tightened pair
/// bound; it is satisfiable exactly when base_fn(m_pq) - threshold >= -1,
/// so other pairs are skipped without solving. `candidates` restricts the
/// pairs (default: all ordered pairs).
template <Scalar S>
PairMaximum<S> max_over_pairs(const FiniteMetricSpace<S>& space, const LipFunction<S>& base_fn, const S& threshold,
                              const FreeElement<S>& objective,
                              const std::optional<std::vector<std::pair<int, int>>>& candidates = std::nullopt,
                              unsigned threads = 0) {
    if (threshold > S(2)) throw ArgumentError("threshold must be at most 2");
    require_same_space(base_fn.space(), objective.space());
    const auto pairs = candidates ? *candidates : detail::ordered_pairs(space);
    std::vector<std::pair<int, int>> live;
    for (auto [p, q] : pairs) {
        space.require_point(p);
        space.require_point(q);
        if (p == q) throw ArgumentError("candidate pair with equal points");
        if (space.tol().ge(S(base_fn.eval({p, q}) - threshold), S(-1))) live.emplace_back(p, q);
    }
    std::vector<LpSolution<S>> sols(live.size());
    parallel_for(
        live.size(),
        [&](std::size_t k) {
            auto [p, q] = live[k];
            LipBallProgram<S> prog(objective);
            S b = detail::witness_bound(base_fn, p, q, threshold);
            // Rounding can push a tight bound just below -d(q,p); clamp to the feasible edge.
            if (b < S(-space.d(p, q))) b = S(-space.d(p, q));
            prog.tighten_pair(p, q, b);
            sols[k] = solve_lip_ball(prog);
        },
        threads);
    PairMaximum<S> out;
    out.pairs_considered = live.size();
    out.programs_solved = live.size();
    for (std::size_t k = 0; k < live.size(); ++k) {
        auto& s = sols[k];
        if (!s.optimal()) continue;
        if (out.status != LpStatus::optimal || s.value > out.value) {
            out.status = LpStatus::optimal;
            out.value = s.value;
            out.witness = live[k];
            out.argument = std::move(s.argument);
        }
    }
    return out;
}

/// Outcome of certifying the strict statement: every g in the ball with
/// (base_fn - g)(m_pq) > threshold for some pair has <objective, g> < bound.
template <Scalar S>
struct StrictCertificate {
    bool holds = false;
    S closed_max{};                     // maximum over the closed constraints (or bound if none)
    bool any_pair = false;              // some pair admits a strictly feasible g
    std::vector<std::pair<int, int>> tight_pairs;  // closed max equals bound; settled by a second program
    std::pair<int, int> witness{-1, -1};           // pair attaining closed_max
    std::optional<std::pair<int, int>> violation;  // pair refuting the claim
    std::optional<LipFunction<S>> argument;
};

/// Closed maxima decide every pair except those where the maximum equals the
/// bound exactly; for those, maximize (base_fn - g)(m_pq) subject to
/// <objective, g> >= bound and require the result not to exceed threshold.
template <Scalar S>
StrictCertificate<S> certify_strict_upper(const FiniteMetricSpace<S>& space, const LipFunction<S>& base_fn,
                                          const S& threshold, const FreeElement<S>& objective, const S& bound,
                                          const std::optional<std::vector<std::pair<int, int>>>& candidates =
                                              std::nullopt,
                                          unsigned threads = 0) {
    if (threshold > S(2)) throw ArgumentError("threshold must be at most 2");
    const auto& tol = space.tol();
    const auto pairs = candidates ? *candidates : detail::ordered_pairs(space);
    std::vector<std::pair<int, int>> live;
    for (auto [p, q] : pairs)
        if (tol.positive(S(base_fn.eval({p, q}) - threshold + S(1)))) live.emplace_back(p, q);
    StrictCertificate<S> cert;
    cert.holds = true;
    cert.any_pair = !live.empty();
    cert.closed_max = bound;
    if (live.empty()) return cert;
    std::vector<LpSolution<S>> sols(live.size());
    parallel_for(
        live.size(),
        [&](std::size_t k) {
            auto [p, q] = live[k];
            LipBallProgram<S> prog(objective);
            prog.tighten_pair(p, q, detail::witness_bound(base_fn, p, q, threshold));
            sols[k] = solve_lip_ball(prog);
        },
        threads);
    bool first = true;
    for (std::size_t k = 0; k < live.size(); ++k) {
        auto [p, q] = live[k];
        const auto& s = sols[k];
        if (!s.optimal()) continue;
        if (first || s.value > cert.closed_max) {
            cert.closed_max = s.value;
            cert.witness = live[k];
            cert.argument = s.argument;
            first = false;
        }
        if (tol.lt(s.value, bound)) continue;
        if (tol.gt(s.value, bound)) {
            cert.holds = false;
            if (!cert.violation) cert.violation = live[k];
            continue;
        }
        cert.tight_pairs.push_back(live[k]);
        // max (base_fn - g)(m_pq) = base_fn(m_pq) + max g(m_qp) over the ball with <objective, g> >= bound.
        LipBallProgram<S> low(FreeElement<S>::molecule(base_fn.space(), q, p));
        low.add(objective, Relation::ge, bound);
        auto lo = solve_lip_ball(low);
        if (lo.optimal() && tol.gt(S(base_fn.eval({p, q}) + lo.value), threshold)) {
            cert.holds = false;
            if (!cert.violation) cert.violation = live[k];
        }
    }
    return cert;
}

}  // namespace lipfree

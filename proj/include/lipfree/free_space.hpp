#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "optimizer.hpp"

namespace lipfree {

template <Scalar S>
struct FreeNorm {
    S value;
    LipFunction<S> witness;  // norm-at-most-one f with <mu, f> = value
    TransportPlan<S> plan;   // plan with cost = value
};

/// Kantorovich-Rubinstein norm with both certificates; the LP value and
/// the transport cost are compared on every call.
template <Scalar S>
FreeNorm<S> free_norm(const FreeElement<S>& mu) {
    const auto& space = mu.space();
    auto sol = solve_lip_ball(LipBallProgram<S>(mu));
    if (!sol.optimal()) throw std::logic_error("norm program is always feasible and bounded");
    auto plan = min_cost_transport(*space, mu);
    if (!space->tol().eq(sol.value, plan.cost))
        throw std::logic_error("duality gap between LP value " + format_scalar(sol.value) + " and transport cost " +
                               format_scalar(plan.cost));
    return {sol.value, std::move(*sol.argument), std::move(plan)};
}

template <Scalar S>
S free_norm_value(const FreeElement<S>& mu) {
    auto sol = solve_lip_ball(LipBallProgram<S>(mu));
    return sol.value;
}

template <Scalar S>
S free_dist(const FreeElement<S>& mu, const FreeElement<S>& nu) {
    require_same_space(mu.space(), nu.space());
    return free_norm(mu - nu).value;
}

template <Scalar S>
S free_dist(const SpacePtr<S>& space, const Molecule& a, const Molecule& b) {
    return free_dist(FreeElement<S>::molecule(space, a), FreeElement<S>::molecule(space, b));
}

/// (d(u,p) + d(q,v) + |d(u,v) - d(p,q)|) / max{d(u,v), d(p,q)} for m1 = m_uv, m2 = m_pq.
template <Scalar S>
S molecule_distance_formula(const FiniteMetricSpace<S>& space, const Molecule& m1, const Molecule& m2) {
    for (int p : {m1.u, m1.v, m2.u, m2.v}) space.require_point(p);
    if (m1.u == m1.v || m2.u == m2.v) throw ArgumentError("molecule requires distinct points");
    const S& duv = space.d(m1.u, m1.v);
    const S& dpq = space.d(m2.u, m2.v);
    S num = space.d(m1.u, m2.u) + space.d(m2.v, m1.v) + abs_value(S(duv - dpq));
    return num / (duv > dpq ? duv : dpq);
}

// ---------------------------------------------------------------------------
// vertices of the unit ball

template <Scalar S>
struct VertexTest {
    Molecule molecule;
    bool extreme = false;
    LpStatus status = LpStatus::optimal;
    S value{};  // max f(m) over f with every other molecule <= 1 (when bounded)
    std::optional<LipFunction<S>> separator;
};

template <Scalar S>
struct ExtremeReport {
    std::vector<Molecule> extreme;
    std::vector<VertexTest<S>> tests;
};

/// m_uv is a vertex of conv(molecules) iff some f with f(m) <= 1 on all
/// other molecules has f(m_uv) > 1: maximize f(m_uv) with the (u,v) bound
/// removed.
template <Scalar S>
ExtremeReport<S> extreme_molecules(const SpacePtr<S>& space, unsigned threads = 0) {
    auto mols = all_molecules(*space);
    std::vector<VertexTest<S>> tests(mols.size());
    parallel_for(
        mols.size(),
        [&](std::size_t k) {
            const auto m = mols[k];
            LipBallProgram<S> prog(FreeElement<S>::molecule(space, m));
            prog.drop_pair(m.u, m.v);
            auto sol = solve_lip_ball(prog);
            auto& t = tests[k];
            t.molecule = m;
            t.status = sol.status;
            if (sol.status == LpStatus::unbounded) {
                t.extreme = true;
            } else if (sol.optimal()) {
                t.value = sol.value;
                t.extreme = space->tol().gt(sol.value, S(1));
                t.separator = std::move(sol.argument);
            }
        },
        threads);
    ExtremeReport<S> rep;
    for (auto& t : tests)
        if (t.extreme) rep.extreme.push_back(t.molecule);
    rep.tests = std::move(tests);
    return rep;
}

// ---------------------------------------------------------------------------
// slices and Δ-sets restricted to molecules

template <Scalar S>
void require_unit_norm(const LipFunction<S>& f) {
    if (!f.space()->tol().eq(f.norm(), S(1)))
        throw ArgumentError("functional must have norm exactly 1, got " + format_scalar(f.norm()));
}

template <Scalar S>
void require_slice_width(const S& alpha) {
    if (!(alpha > S(0) && alpha <= S(2))) throw ArgumentError("alpha must lie in (0,2]");
}

/// Molecules with f(m) > 1 - alpha.
template <Scalar S>
std::vector<Molecule> molecules_in_slice(const LipFunction<S>& f, const S& alpha) {
    require_unit_norm(f);
    require_slice_width(alpha);
    const auto& space = *f.space();
    std::vector<Molecule> out;
    for (const auto& m : all_molecules(space))
        if (space.tol().gt(f.eval(m), S(1) - alpha)) out.push_back(m);
    return out;
}

/// Molecules m with ||x - m|| >= 2 - eps.
template <Scalar S>
std::vector<Molecule> delta_set_molecules(const FreeElement<S>& x, const S& eps, unsigned threads = 0) {
    const auto& space = x.space();
    if (!(eps > S(0) && eps <= S(2))) throw ArgumentError("eps must lie in (0,2]");
    if (!space->tol().eq(free_norm(x).value, S(1))) throw ArgumentError("element must have norm 1");
    auto mols = all_molecules(*space);
    std::vector<char> keep(mols.size(), 0);
    parallel_for(
        mols.size(),
        [&](std::size_t k) {
            S dist = free_dist(x, FreeElement<S>::molecule(space, mols[k]));
            keep[k] = space->tol().ge(dist, S(2) - eps);
        },
        threads);
    std::vector<Molecule> out;
    for (std::size_t k = 0; k < mols.size(); ++k)
        if (keep[k]) out.push_back(mols[k]);
    return out;
}

}  // namespace lipfree

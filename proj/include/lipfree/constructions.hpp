#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "annuli.hpp"
#include "builders.hpp"
#include "extraction.hpp"
#include "lip_function.hpp"

namespace lipfree {

// ---------------------------------------------------------------------------
// McShane-Whitney extension

/// `lower` is the pointwise smallest L-Lipschitz extension,
/// p -> max_s (f(s) - L d(s,p)); `upper` the largest, p -> min_s (f(s) + L d(s,p)).
enum class Extension { lower, upper };

/// Partial function: values on a subset of points.
template <Scalar S>
struct PartialFunction {
    std::vector<int> points;
    std::vector<S> values;
};

/// Exact Lipschitz constant of a partial function (0 for fewer than two points),
/// with an attaining ordered pair.
template <Scalar S>
std::pair<S, std::pair<int, int>> partial_lipschitz(const FiniteMetricSpace<S>& space, const PartialFunction<S>& pf) {
    S best(0);
    std::pair<int, int> arg{-1, -1};
    for (std::size_t a = 0; a < pf.points.size(); ++a)
        for (std::size_t b = 0; b < pf.points.size(); ++b) {
            if (a == b) continue;
            S r = (pf.values[a] - pf.values[b]) / space.d(pf.points[a], pf.points[b]);
            if (r > best) {
                best = r;
                arg = {pf.points[a], pf.points[b]};
            }
        }
    return {best, arg};
}

/// Raw extension values (no base normalization).
template <Scalar S>
std::vector<S> mcshane_values(const FiniteMetricSpace<S>& space, const PartialFunction<S>& pf, const S& L,
                              Extension dir) {
    if (pf.points.empty()) throw ArgumentError("extension needs a non-empty subset");
    if (pf.points.size() != pf.values.size()) throw StructuralError("subset and values differ in length");
    if (L < S(0)) throw ArgumentError("Lipschitz bound must be nonnegative");
    const int n = space.size();
    std::vector<char> seen(n, 0);
    for (int p : pf.points) {
        space.require_point(p);
        if (seen[p]) throw ArgumentError("subset lists point " + space.label(p) + " twice");
        seen[p] = 1;
    }
    for (std::size_t a = 0; a < pf.points.size(); ++a)
        for (std::size_t b = a + 1; b < pf.points.size(); ++b) {
            S diff = abs_value(S(pf.values[a] - pf.values[b]));
            if (space.tol().gt(diff, L * space.d(pf.points[a], pf.points[b])))
                throw PreconditionError("values are not " + format_scalar(L) + "-Lipschitz on the subset",
                                        {pf.points[a], pf.points[b]});
        }
    std::vector<S> out(n);
    std::vector<char> fixed(n, 0);
    for (std::size_t a = 0; a < pf.points.size(); ++a) {
        out[pf.points[a]] = pf.values[a];
        fixed[pf.points[a]] = 1;
    }
    for (int p = 0; p < n; ++p) {
        if (fixed[p]) continue;
        std::optional<S> best;
        for (std::size_t a = 0; a < pf.points.size(); ++a) {
            const S reach = L * space.d(pf.points[a], p);
            S cand = dir == Extension::lower ? S(pf.values[a] - reach) : S(pf.values[a] + reach);
            if (!best || (dir == Extension::lower ? cand > *best : cand < *best)) best = std::move(cand);
        }
        out[p] = *best;
    }
    return out;
}

/// McShane-Whitney extension as a Lip_0 function. With `shift_to_base` the
/// result is shifted by -f(base) (molecule values are unchanged); otherwise
/// a nonzero base value is a precondition error.
template <Scalar S>
LipFunction<S> mcshane_extend(const SpacePtr<S>& space, const PartialFunction<S>& pf, const S& L, Extension dir,
                              bool shift_to_base = true) {
    auto vals = mcshane_values(*space, pf, L, dir);
    if (!shift_to_base && !space->tol().is_zero(vals[space->base()]))
        throw PreconditionError("extension does not vanish at the base point", {space->base()});
    return LipFunction<S>::shifted(space, std::move(vals));
}

namespace detail {

template <Scalar S>
void require_unit_ball(const LipFunction<S>& g, const char* what) {
    if (g.space()->tol().gt(g.norm(), S(1)))
        throw PreconditionError(std::string(what) + " needs a function of norm at most 1",
                                {g.norm_pair().first, g.norm_pair().second});
}

}  // namespace detail

/// h = g off u, h(u) = sup_{v != u} (g(v) - d(v,u)).
template <Scalar S>
LipFunction<S> flatten_at_point(const LipFunction<S>& g, int u) {
    const auto& space = *g.space();
    space.require_point(u);
    if (u == space.base()) throw ArgumentError("cannot flatten at the base point");
    detail::require_unit_ball(g, "flatten_at_point");
    auto vals = g.values();
    std::optional<S> best;
    for (int v = 0; v < space.size(); ++v) {
        if (v == u) continue;
        S cand = g(v) - space.d(v, u);
        if (!best || cand > *best) best = std::move(cand);
    }
    vals[u] = *best;
    return LipFunction<S>(g.space(), std::move(vals));
}

/// h(p) = max{ min_i g(y_i), max_i (g(x_i) - d(x_i,p)) } + a with h(base) = 0.
template <Scalar S>
LipFunction<S> slice_flatten(const LipFunction<S>& g, const std::vector<int>& xs, const std::vector<int>& ys) {
    const auto& space = *g.space();
    if (xs.empty() || ys.empty()) throw ArgumentError("anchor lists must be non-empty");
    if (xs.size() != ys.size()) throw ArgumentError("anchor lists must have equal length");
    for (int p : xs) space.require_point(p);
    for (int p : ys) space.require_point(p);
    detail::require_unit_ball(g, "slice_flatten");
    S floor = g(ys[0]);
    for (int y : ys)
        if (g(y) < floor) floor = g(y);
    std::vector<S> vals(space.size());
    for (int p = 0; p < space.size(); ++p) {
        S best = floor;
        for (int x : xs) {
            S cand = g(x) - space.d(x, p);
            if (cand > best) best = std::move(cand);
        }
        vals[p] = std::move(best);
    }
    return LipFunction<S>::shifted(g.space(), std::move(vals));
}

/// Plateau completion of g outside the core {x_i, y_i, u_i, v_i : i <= n}
/// of the four-family space: with a the midpoint of g's range on the core,
/// tail x's get a-1, tail y's a+1, tail u's and v's get a.
template <Scalar S>
LipFunction<S> tail_plateau(const LipFunction<S>& g, const Example2Layout& layout, int n) {
    const auto& space = *g.space();
    if (layout.N * 4 != space.size() || n < 1 || n >= layout.N)
        throw ArgumentError("core must be a proper initial block of the four-family space");
    if (space.base() != layout.x[1]) throw ArgumentError("four-family space must be based at x_1");
    auto core = layout.core(n);
    std::vector<int> core_pts = core;
    std::vector<S> core_vals;
    for (int p : core) core_vals.push_back(g(p));
    if (space.tol().gt(partial_lipschitz(space, PartialFunction<S>{core_pts, core_vals}).first, S(1)))
        throw PreconditionError("g must be 1-Lipschitz on the core");
    S lo = core_vals[0], hi = core_vals[0];
    for (const auto& v : core_vals) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    const S a = (lo + hi) / S(2);
    std::vector<S> vals(space.size());
    for (int p : core) vals[p] = g(p);
    for (int i = n + 1; i <= layout.N; ++i) {
        vals[layout.x[i]] = a - S(1);
        vals[layout.y[i]] = a + S(1);
        vals[layout.u[i]] = a;
        vals[layout.v[i]] = a;
    }
    return LipFunction<S>(g.space(), std::move(vals));
}

/// p -> min over sites of d(site, p); the first site must be the base.
template <Scalar S>
LipFunction<S> nearest_point_function(const SpacePtr<S>& space, const std::vector<int>& sites) {
    if (sites.empty()) throw ArgumentError("need at least one site");
    if (sites.front() != space->base()) throw ArgumentError("the first site must be the base point");
    std::vector<S> vals(space->size());
    for (int p = 0; p < space->size(); ++p) {
        S best = space->d(sites[0], p);
        for (int s : sites) {
            space->require_point(s);
            if (space->d(s, p) < best) best = space->d(s, p);
        }
        vals[p] = std::move(best);
    }
    return LipFunction<S>(space, std::move(vals));
}

// ---------------------------------------------------------------------------
// recursive Daugavet construction over separated annuli

template <Scalar S>
struct RecursionStage {
    int stage = 0;
    S value_u, value_v;       // f(u_s), f(v_s)
    S lipschitz;              // constant of f on M_s = {u_i, v_i : i <= s}
    S lipschitz_bound;        // 1 - 2^-s
    S molecule;               // f(m_{u_s v_s})
    S molecule_bound;         // 1 - 2^-(s-1)
};

template <Scalar S>
struct RecursionResult {
    LipFunction<S> function;            // McShane extension of the recursion, normalized to norm 1
    S extension_norm;                   // norm before normalization
    std::vector<RecursionStage<S>> stages;
};

/// eps_i = 2^-(i+1).
template <Scalar S>
S daugavet_eps(int i) {
    return inv_pow2<S>(static_cast<unsigned>(i + 1));
}

template <Scalar S>
RecursionResult<S> daugavet_recursive_construction(const SpacePtr<S>& space, const AnnuliFamily& fam) {
    const auto k = fam.pairs.size();
    if (k == 0) throw ArgumentError("need at least one pair");
    if (fam.pairs[0].first != space->base()) throw PreconditionError("u_1 must be the base point", {fam.pairs[0].first});
    auto rep = check_annuli_hypothesis<S>(*space, fam, daugavet_eps<S>);
    if (!rep.ok()) throw PreconditionError("annuli hypothesis fails: " + rep.failure, rep.violation.value_or(std::vector<int>{}));
    if (!rep.earlier_points_outside)
        throw PreconditionError("A_i must avoid the points of earlier pairs");
    PartialFunction<S> pf;
    std::vector<RecursionStage<S>> stages;
    for (std::size_t s = 1; s <= k; ++s) {
        auto [u, v] = fam.pairs[s - 1];
        const S c = S(1) - inv_pow2<S>(static_cast<unsigned>(s));
        S fu(0), fv(0);
        if (s > 1) {
            std::optional<S> best;
            for (std::size_t a = 0; a < pf.points.size(); ++a) {
                S cand = pf.values[a] + c * space->d(pf.points[a], u);
                if (!best || cand < *best) best = std::move(cand);
            }
            fu = *best;
            std::optional<S> top = fu - c * space->d(u, v);
            for (std::size_t a = 0; a < pf.points.size(); ++a) {
                S cand = pf.values[a] - c * space->d(pf.points[a], v);
                if (cand > *top) top = std::move(cand);
            }
            fv = *top;
        }
        pf.points.push_back(u);
        pf.values.push_back(fu);
        pf.points.push_back(v);
        pf.values.push_back(fv);
        RecursionStage<S> st;
        st.stage = static_cast<int>(s);
        st.value_u = fu;
        st.value_v = fv;
        st.lipschitz = partial_lipschitz(*space, pf).first;
        st.lipschitz_bound = c;
        st.molecule = (fu - fv) / space->d(u, v);
        st.molecule_bound = S(1) - inv_pow2<S>(static_cast<unsigned>(s - 1));
        stages.push_back(std::move(st));
    }
    const S L = stages.back().lipschitz;
    auto ext = mcshane_extend(space, pf, L, Extension::lower);
    S norm = ext.norm();
    auto f = norm > S(0) ? ext.normalized() : ext;
    return {std::move(f), std::move(norm), std::move(stages)};
}

// ---------------------------------------------------------------------------
// hat functions on separated pairs

template <Scalar S>
struct DeltaHatFamily {
    LipFunction<S> f;
    std::vector<LipFunction<S>> g;  // g[i-2] is g_i for i = 2..k
    S scale;                        // 1 / ||f_raw||, applied to f and every g_i
};

/// f(u_i) = a(i-2)/(2i), f(v_i) = -a(i-2)/(2i) for i >= 2, 0 elsewhere; g_i
/// swaps the two values at pair i. All functions are divided by the norm
/// of the raw f so that ||f|| = 1.
template <Scalar S>
DeltaHatFamily<S> delta_hat_family(const SpacePtr<S>& space, const std::vector<std::pair<int, int>>& pairs, const S& a,
                                   const S& tolerance = S(0)) {
    if (pairs.size() < 3) throw ArgumentError("need at least three pairs");
    if (pairs[0].first != space->base()) throw PreconditionError("u_1 must be the base point", {pairs[0].first});
    if (!check_separated_pairs(*space, a, pairs, tolerance))
        throw PreconditionError("pairs violate the separation inequalities at scale " + format_scalar(a));
    const auto k = pairs.size();
    std::vector<S> raw(space->size(), S(0));
    auto height = [&](std::size_t i) { return a * S(static_cast<long>(i) - 2) / S(2 * static_cast<long>(i)); };
    for (std::size_t i = 2; i <= k; ++i) {
        raw[pairs[i - 1].first] = height(i);
        raw[pairs[i - 1].second] = S(-height(i));
    }
    LipFunction<S> f_raw(space, raw);
    if (f_raw.norm() == S(0)) throw PreconditionError("hat function vanishes identically");
    const S scale = S(1) / f_raw.norm();
    DeltaHatFamily<S> out{f_raw.scaled(scale), {}, scale};
    for (std::size_t i = 2; i <= k; ++i) {
        auto vals = raw;
        std::swap(vals[pairs[i - 1].first], vals[pairs[i - 1].second]);
        for (auto& x : vals) x *= scale;
        out.g.emplace_back(space, std::move(vals));
    }
    return out;
}

// ---------------------------------------------------------------------------
// extension from outside an annulus

/// g = (1-eps) f outside A with a large molecule value at (u,v):
/// v outside A: g(u) = g(v) + (1-eps) d(u,v);
/// v inside A: g(u) = inf_{x outside A} (g(x) + d(x,u)).
/// The remaining points of A get sup_{x outside A or x = u} (g(x) - d(x,y)).
template <Scalar S>
LipFunction<S> annulus_case_extension(const LipFunction<S>& f, const std::vector<int>& A, int u, int v, const S& eps) {
    const auto& space = *f.space();
    require_open_unit(eps, "eps");
    space.require_point(u);
    space.require_point(v);
    if (u == v) throw ArgumentError("u and v must differ");
    detail::require_unit_ball(f, "annulus_case_extension");
    const int n = space.size();
    std::vector<char> in(n, 0);
    for (int p : A) {
        space.require_point(p);
        in[p] = 1;
    }
    if (!in[u]) throw PreconditionError("u must lie in A", {u});
    std::vector<int> outside;
    for (int p = 0; p < n; ++p)
        if (!in[p]) outside.push_back(p);
    if (outside.empty()) throw ArgumentError("A must not cover the whole space");
    for (int x : outside)
        for (int y : outside) {
            auto c = check_annulus_inequality(space, eps, u, v, x, y);
            if (!c.holds) throw PreconditionError("four-point inequality fails", {u, v, x, y});
        }
    const S shrink = S(1) - eps;
    std::vector<S> g(n, S(0));
    for (int x : outside) g[x] = shrink * f(x);
    if (!in[v]) {
        g[u] = g[v] + shrink * space.d(u, v);
    } else {
        std::optional<S> best;
        for (int x : outside) {
            S cand = g[x] + space.d(x, u);
            if (!best || cand < *best) best = std::move(cand);
        }
        g[u] = *best;
    }
    for (int y = 0; y < n; ++y) {
        if (!in[y] || y == u) continue;
        S best = g[u] - space.d(u, y);
        for (int x : outside) {
            S cand = g[x] - space.d(x, y);
            if (cand > best) best = std::move(cand);
        }
        g[y] = std::move(best);
    }
    return LipFunction<S>::shifted(f.space(), std::move(g));
}

// ---------------------------------------------------------------------------
// locality

template <Scalar S>
struct LocalityEntry {
    S radius;                  // distinct pair distance r
    S best;                    // max f(m_uv) over pairs with d(u,v) <= r
    Molecule argmax;
};

template <Scalar S>
std::vector<LocalityEntry<S>> locality_profile(const LipFunction<S>& f) {
    const auto& space = *f.space();
    if (f.norm() == S(0)) throw ArgumentError("locality profile needs a non-constant function");
    std::vector<LocalityEntry<S>> out;
    for (const S& r : space.distinct_distances()) {
        LocalityEntry<S> e{r, S(0), {}};
        bool first = true;
        for (int u = 0; u < space.size(); ++u)
            for (int v = 0; v < space.size(); ++v) {
                if (u == v || space.d(u, v) > r) continue;
                S val = f.eval({u, v});
                if (first || val > e.best) {
                    e.best = val;
                    e.argmax = {u, v};
                    first = false;
                }
            }
        out.push_back(std::move(e));
    }
    return out;
}

/// Some molecule with f(m_uv) > ||f|| - eps and d(u,v) < eps.
template <Scalar S>
bool is_eps_local(const LipFunction<S>& f, const S& eps) {
    for (const auto& e : locality_profile(f))
        if (e.radius < eps && e.best > f.norm() - eps) return true;
    return false;
}

}  // namespace lipfree

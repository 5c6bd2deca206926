#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diametral.hpp"

namespace lipfree {

// ---------------------------------------------------------------------------
// sampling

/// Integer values in [-range, range] (zero at the base), divided by the
/// Lipschitz constant. Redraws constant samples.
template <Scalar S>
LipFunction<S> random_unit_function(const SpacePtr<S>& space, Rng& rng, int range = 8) {
    if (space->size() < 2) throw ArgumentError("a norm-one function needs at least two points");
    for (;;) {
        std::vector<S> vals(space->size(), S(0));
        for (int p = 0; p < space->size(); ++p)
            if (p != space->base()) vals[p] = S(rng.uniform(-range, range));
        LipFunction<S> f(space, std::move(vals));
        if (f.norm() > S(0)) return f.normalized();
    }
}

/// Random integer weights on 1..max_support points of `pool`, divided by the norm.
template <Scalar S>
FreeElement<S> random_unit_element(const SpacePtr<S>& space, const std::vector<int>& pool, Rng& rng,
                                   int max_support = 4, int range = 5) {
    std::vector<int> usable;
    for (int p : pool)
        if (p != space->base()) usable.push_back(p);
    if (usable.empty()) throw ArgumentError("support pool has no non-base point");
    for (;;) {
        FreeElement<S> mu(space);
        const auto count = rng.uniform(1, max_support);
        for (std::int64_t s = 0; s < count; ++s)
            mu.add(usable[rng.uniform(0, static_cast<std::int64_t>(usable.size()) - 1)], S(rng.uniform(-range, range)));
        if (mu.is_zero()) continue;
        return S(1) / free_norm(mu).value * mu;
    }
}

namespace detail {

inline std::string join_labels(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : " ") + x;
    return out;
}

template <Scalar S>
std::string pair_label(const FiniteMetricSpace<S>& space, std::pair<int, int> pq) {
    return "m(" + space.label(pq.first) + "," + space.label(pq.second) + ")";
}

template <Scalar S>
std::string values_string(const LipFunction<S>& f) {
    std::string out;
    for (int p = 0; p < f.space()->size(); ++p)
        out += (p ? " " : "") + f.space()->label(p) + "=" + format_scalar(f(p));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// d(n,k) = 3 - |1/n - 1/k|: no w*-Daugavet-point

/// alpha = 1/(3n) - 1/(3(n+1)).
template <Scalar S>
S example1_alpha(int n) {
    return frac<S>(1, 3 * n) - frac<S>(1, 3 * (n + 1));
}

/// Smallest n >= 2 with f(m_{1n}) >= 0, provided f(m_{k1}) <= 3/4 for all k;
/// nullopt otherwise. Point index p carries the label p + 1.
template <Scalar S>
std::optional<int> example1_index(const LipFunction<S>& f) {
    const auto& space = *f.space();
    const S cap = frac<S>(3, 4);
    for (int k = 1; k < space.size(); ++k)
        if (space.tol().gt(f.eval({k, 0}), cap)) return std::nullopt;
    for (int n = 1; n < space.size(); ++n)
        if (space.tol().ge(f.eval({0, n}), S(0))) return n + 1;
    return std::nullopt;
}

/// Replaces f by -f when f itself admits no index, as in the proof.
template <Scalar S>
std::optional<std::pair<LipFunction<S>, int>> example1_sign_normalize(const LipFunction<S>& f) {
    if (auto n = example1_index(f)) return std::make_pair(f, *n);
    auto g = -f;
    if (auto n = example1_index(g)) return std::make_pair(g, *n);
    return std::nullopt;
}

/// mu = (1/(n-1)) sum_{i<n} m_{i n}.
template <Scalar S>
FreeElement<S> example1_mu(const SpacePtr<S>& space, int n) {
    FreeElement<S> mu(space);
    for (int i = 1; i < n; ++i) mu += FreeElement<S>::molecule(space, i - 1, n - 1);
    return frac<S>(1, n - 1) * mu;
}

template <Scalar S>
struct Example1Params {
    int N = 24;
    int n = 2;
    std::optional<LipFunction<S>> f;  // given function; otherwise `samples` random ones
    int samples = 50;
    std::uint64_t seed = 1;
    int max_draws = 200000;
};

/// For each (sign-normalized) f with index n: every g in the ball with a pair
/// witnessing ||f - g|| > 2 - alpha has mu(g) < 1 - alpha/n.
template <Scalar S>
CertificateReport verify_example1(const Example1Params<S>& prm) {
    if (prm.N < 3) throw ArgumentError("N must be at least 3");
    if (prm.n < 2 || prm.n >= prm.N) throw ArgumentError("n must satisfy 2 <= n < N");
    auto space = build_example1_space<S>(prm.N);
    const int n = prm.n;
    const S alpha = example1_alpha<S>(n);
    const S bound = S(1) - alpha / S(n);
    ReportBuilder<S> rb("no g with ||f - g|| > 2 - alpha lies in S(mu, alpha/n)", space->tol().eps);
    rb.param("N", static_cast<long long>(prm.N));
    rb.param("n", static_cast<long long>(n));
    rb.param("alpha", alpha);
    rb.param("alpha_formula", "1/" + std::to_string(3 * n) + " - 1/" + std::to_string(3 * (n + 1)) + " = " +
                                  format_scalar(alpha));
    rb.param("slice_width", S(alpha / S(n)));
    rb.param("seed", std::to_string(prm.seed));
    rb.compare("alpha = 1/(3n) - 1/(3(n+1))", alpha, "=", S(S(1) / S(3 * n) - S(1) / S(3 * n + 3)));
    auto mu = example1_mu(space, n);
    rb.compare("||mu|| = 1", free_norm(mu).value, "=", S(1));

    std::vector<LipFunction<S>> fs;
    if (prm.f) {
        require_same_space(space, prm.f->space());
        auto sn = example1_sign_normalize(*prm.f);
        if (!sn) {
            rb.flag("f admits an index n after sign normalization", false);
            return rb.finish();
        }
        rb.compare("derived index equals n", S(sn->second), "=", S(n));
        fs.push_back(sn->first);
    } else {
        Rng rng(prm.seed);
        int draws = 0;
        while (static_cast<int>(fs.size()) < prm.samples && draws < prm.max_draws) {
            ++draws;
            auto sn = example1_sign_normalize(random_unit_function(space, rng));
            if (sn && sn->second == n) fs.push_back(sn->first);
        }
        rb.param("draws", static_cast<long long>(draws));
        rb.compare("samples with index n", S(static_cast<long>(fs.size())), "=", S(prm.samples));
    }
    for (std::size_t s = 0; s < fs.size(); ++s) {
        const auto& f = fs[s];
        const std::string tag = "sample " + std::to_string(s);
        rb.compare(tag + ": ||f|| = 1", f.norm(), "=", S(1));
        // Witness pairs of the proof: f(m_kl) > 1 - alpha forces l >= n and k != n (1-based).
        bool shape = true;
        std::string where;
        for (int k = 0; k < space->size(); ++k)
            for (int l = 0; l < space->size(); ++l) {
                if (k == l || !space->tol().gt(f.eval({k, l}), S(1) - alpha)) continue;
                if (l + 1 < n || k + 1 == n) {
                    shape = false;
                    where = detail::pair_label(*space, {k, l});
                }
            }
        rb.flag(tag + ": witness pairs (k,l) have l >= n and k != n", shape,
                where.empty() ? NamedValues{} : NamedValues{{"pair", where}});
        auto cert = certify_strict_upper(*space, f, S(2) - alpha, mu, bound);
        NamedValues extra{{"closed_max_pair", cert.any_pair ? detail::pair_label(*space, cert.witness) : "none"},
                          {"tight_pairs", std::to_string(cert.tight_pairs.size())}};
        if (cert.violation) extra.emplace_back("violation", detail::pair_label(*space, *cert.violation));
        if (cert.tight_pairs.empty()) {
            rb.compare(tag + ": max mu(g) < 1 - alpha/n", cert.closed_max, cert.any_pair ? "<" : "<=", bound, extra);
        } else {
            rb.compare(tag + ": max mu(g) <= 1 - alpha/n", cert.closed_max, "<=", bound, extra);
            rb.flag(tag + ": bound not attained under the strict witness condition", cert.holds, extra);
        }
        if (prm.f || s == 0) rb.witness(tag + " f", detail::values_string(f));
    }
    return rb.finish();
}

// ---------------------------------------------------------------------------
// four-family space: w*-Daugavet-point that is not a Δ-point

/// 2 on X ∪ U and 0 on Y ∪ V, shifted to vanish at x_1.
template <Scalar S>
LipFunction<S> example2_function(const Example2Space<S>& ex) {
    const auto& L = ex.layout;
    std::vector<S> vals(ex.space->size(), S(0));
    for (int i = 1; i <= L.N; ++i) {
        vals[L.y[i]] = S(-2);
        vals[L.v[i]] = S(-2);
    }
    return LipFunction<S>(ex.space, std::move(vals));
}

/// Pairs (p,q) in the n-core with p in X ∪ U and q in Y ∪ V.
inline std::vector<std::pair<int, int>> example2_witness_pairs(const Example2Layout& L, int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n; ++i)
        for (int p : {L.x[i], L.u[i]})
            for (int j = 1; j <= n; ++j)
                for (int q : {L.y[j], L.v[j]}) out.emplace_back(p, q);
    std::sort(out.begin(), out.end());
    return out;
}

template <Scalar S>
struct Example2Params {
    int N = 7;
    int n = 6;
    std::vector<S> alphas{frac<S>(1, 4), frac<S>(1, 2)};
    std::vector<S> epsilons{frac<S>(1, 10), frac<S>(1, 5), frac<S>(2, 5)};
    int samples = 20;
    std::uint64_t seed = 1;
};

template <Scalar S>
CertificateReport verify_example2(const Example2Params<S>& prm) {
    if (prm.n < 1 || prm.n + 1 > prm.N) throw ArgumentError("core size must satisfy 1 <= n < N");
    if (prm.alphas.empty() || prm.epsilons.empty()) throw ArgumentError("need at least one alpha and one eps");
    for (const auto& a : prm.alphas)
        if (!(a > S(0) && a < S(1))) throw ArgumentError("alpha must lie in (0,1)");
    for (const auto& e : prm.epsilons)
        if (!(e > S(0) && e < frac<S>(1, 2))) throw ArgumentError("eps must lie in (0,1/2)");
    auto ex = build_example2_space<S>(prm.N);
    const auto& space = ex.space;
    const auto& L = ex.layout;
    const int n = prm.n;
    const auto f = example2_function(ex);
    const auto core = L.core(n);
    ReportBuilder<S> rb("f is a w*-Daugavet-point but not a Delta-point", space->tol().eps);
    rb.param("N", static_cast<long long>(prm.N));
    rb.param("points", static_cast<long long>(space->size()));
    rb.param("n", static_cast<long long>(n));
    std::vector<std::string> as, es;
    for (const auto& a : prm.alphas) as.push_back(format_scalar(a));
    for (const auto& e : prm.epsilons) es.push_back(format_scalar(e));
    rb.param("alphas", detail::join_labels(as));
    rb.param("epsilons", detail::join_labels(es));
    rb.param("samples", static_cast<long long>(prm.samples));
    rb.param("seed", std::to_string(prm.seed));
    rb.compare("||f|| = 1", f.norm(), "=", S(1));

    // (a) plateau completion of a slice member
    Rng rng(prm.seed);
    const std::pair<int, int> far{L.x[n + 1], L.y[n + 1]};
    for (const auto& alpha : prm.alphas) {
        for (int s = 0; s < prm.samples; ++s) {
            const std::string tag = "alpha " + format_scalar(alpha) + " sample " + std::to_string(s);
            auto mu = random_unit_element(space, core, rng);
            auto g0 = free_norm(mu).witness;
            auto r = random_unit_function(space, rng);
            // g = (1-t) g0 + t r with t < alpha/2 keeps mu(g) >= 1 - 2t > 1 - alpha.
            const S t = alpha * frac<S>(rng.uniform(0, 9), 20);
            auto g = g0.scaled(S(1) - t) + r.scaled(t);
            auto h = tail_plateau(g, L, n);
            rb.compare(tag + ": g(mu) > 1 - alpha", g.apply(mu), ">", S(1) - alpha);
            rb.compare(tag + ": ||h|| <= 1", h.norm(), "<=", S(1));
            rb.compare(tag + ": h(mu) > 1 - alpha", h.apply(mu), ">", S(1) - alpha);
            rb.compare(tag + ": (f - h)(m(x_{n+1},y_{n+1})) = 2", S(f.eval({far.first, far.second}) -
                                                                    h.eval({far.first, far.second})),
                       "=", S(2));
            rb.compare(tag + ": ||f - h|| = 2", lip_dist(f, h), "=", S(2));
        }
    }

    // (b) Δ-witness pairs and the per-pair bound on g(m(u_{n+1},v_{n+1}))
    const auto pairs = example2_witness_pairs(L, n);
    const auto target = FreeElement<S>::molecule(space, L.u[n + 1], L.v[n + 1]);
    rb.compare("f(m(u_{n+1},v_{n+1})) = 1", f.eval({L.u[n + 1], L.v[n + 1]}), "=", S(1));
    for (const auto& eps : prm.epsilons) {
        const std::string tag = "eps " + format_scalar(eps);
        bool signs = true;
        for (int p = 0; p < space->size(); ++p)
            for (int q = 0; q < space->size(); ++q) {
                if (p == q) continue;
                const S val = f.eval({p, q});
                if (!space->tol().gt(val, S(1) - S(2) * eps)) continue;
                const auto& tol = space->tol();
                const bool ok = tol.eq(val, S(1)) && tol.is_zero(f(p)) && tol.eq(f(q), S(-2));
                signs = signs && ok;
            }
        rb.flag(tag + ": f(m_pq) > 1 - 2eps only for p in X ∪ U, q in Y ∪ V, with f(m_pq) = 1", signs);
        auto cert = certify_strict_upper(*space, f, S(2) - S(2) * eps, target, S(2) * eps, pairs);
        NamedValues extra{{"closed_max_pair", cert.any_pair ? detail::pair_label(*space, cert.witness) : "none"},
                          {"tight_pairs", std::to_string(cert.tight_pairs.size())},
                          {"pairs", std::to_string(pairs.size())}};
        if (cert.violation) extra.emplace_back("violation", detail::pair_label(*space, *cert.violation));
        rb.compare(tag + ": closed max g(m(u_{n+1},v_{n+1})) <= 2eps", cert.closed_max, "<=", S(2) * eps, extra);
        rb.flag(tag + ": g(m(u_{n+1},v_{n+1})) < 2eps for every core Delta-witness", cert.holds, extra);
    }

    // (c) molecule distances
    bool all_one = true;
    S worst(1);
    std::pair<int, int> worst_pair = pairs.front();
    for (auto [p, q] : pairs) {
        const Molecule m{L.u[n + 1], L.v[n + 1]};
        S lp = free_dist(space, m, Molecule{p, q});
        S formula = molecule_distance_formula(*space, m, Molecule{p, q});
        if (lp != S(1) || formula != S(1)) {
            if (all_one || abs_value(S(lp - S(1))) > abs_value(S(worst - S(1)))) {
                worst = lp;
                worst_pair = {p, q};
            }
            all_one = all_one && space->tol().eq(lp, S(1)) && space->tol().eq(formula, S(1));
        }
    }
    rb.flag("||m(u_{n+1},v_{n+1}) - m_pq|| = 1 by LP and by formula for all core witness pairs", all_one,
            {{"pairs", std::to_string(pairs.size())},
             {"extreme_value", format_scalar(worst)},
             {"extreme_pair", detail::pair_label(*space, worst_pair)}});
    rb.witness("distance_formula", "(1+1+|2-2|)/max{2,2} = " +
                                       format_scalar(molecule_distance_formula(
                                           *space, Molecule{L.u[n + 1], L.v[n + 1]}, Molecule{L.x[1], L.y[1]})));
    return rb.finish();
}

// ---------------------------------------------------------------------------
// hat functions on separated pairs: Δ-point

template <Scalar S>
struct DeltaExistenceParams {
    int k = 16;
    std::vector<int> windows{4, 8, 12};
    int separation_from = 5;  // pairwise molecule distances checked for i, j >= this index
    S extraction_tolerance = frac<S>(1, 1000000);
};

template <Scalar S>
CertificateReport verify_delta_existence(const SpacePtr<S>& space, const DeltaExistenceParams<S>& prm) {
    if (prm.k < 3) throw ArgumentError("k must be at least 3");
    ReportBuilder<S> rb("f is in the closed convex hull of Delta_eps(f)", space->tol().eps);
    rb.param("points", static_cast<long long>(space->size()));
    rb.param("k", static_cast<long long>(prm.k));
    auto ext = extract_separated_pairs(*space, prm.extraction_tolerance, ExtractionMode::pairs);
    rb.param("extracted_pairs", static_cast<long long>(ext.pairs.size()));
    if (!rb.compare("extracted pairs >= k", S(static_cast<long>(ext.pairs.size())), ">=", S(prm.k)))
        return rb.finish();
    std::vector<std::pair<int, int>> pairs(ext.pairs.begin(), ext.pairs.begin() + prm.k);
    rb.param("a", ext.a);
    std::vector<std::string> pl;
    for (auto pq : pairs) pl.push_back(space->label(pq.first) + "-" + space->label(pq.second));
    rb.witness("pairs", detail::join_labels(pl));
    rb.flag("pairs satisfy the separation inequalities", check_separated_pairs(*space, ext.a, pairs,
                                                                               prm.extraction_tolerance));
    auto fam = delta_hat_family(space, pairs, ext.a, prm.extraction_tolerance);
    rb.param("scale", fam.scale);
    rb.compare("||f|| = 1", fam.f.norm(), "=", S(1));
    for (int i = 2; i <= prm.k; ++i) {
        const auto& g = fam.g[i - 2];
        auto [u, v] = pairs[i - 1];
        const S lower = S(i - 2) / S(i + 1);
        rb.compare("f(m(u_" + std::to_string(i) + ",v_" + std::to_string(i) + ")) >= (i-2)/(i+1)", fam.f.eval({u, v}),
                   ">=", lower);
        rb.compare("||g_" + std::to_string(i) + "|| <= 1", g.norm(), "<=", S(1));
        if (i >= 3)
            rb.compare("||f - g_" + std::to_string(i) + "|| >= 2(i-2)/(i+1)", lip_dist(fam.f, g), ">=",
                       S(S(2) * lower));
    }
    for (int w : prm.windows) {
        if (w < 1 || w + 1 > prm.k) throw ArgumentError("window " + std::to_string(w) + " does not fit k");
        S worst(0);
        int worst_j = 1;
        for (int j = 1; j + w <= prm.k; ++j) {
            std::vector<S> vals(space->size(), S(0));
            for (int t = 1; t <= w; ++t) {
                const auto& g = fam.g[t + j - 2];
                for (int p = 0; p < space->size(); ++p) vals[p] += g(p);
            }
            for (auto& x : vals) x /= S(w);
            S dist = lip_dist(fam.f, LipFunction<S>(space, std::move(vals)));
            if (dist > worst) {
                worst = dist;
                worst_j = j;
            }
        }
        rb.compare("max_j ||f - (1/" + std::to_string(w) + ") sum_{t<=" + std::to_string(w) + "} g_{t+j}|| <= 4/" +
                       std::to_string(w),
                   worst, "<=", S(S(4) / S(w)), {{"j", std::to_string(worst_j)}});
    }
    for (int i = prm.separation_from; i <= prm.k; ++i)
        for (int j = i + 1; j <= prm.k; ++j) {
            Molecule mi{pairs[i - 1].first, pairs[i - 1].second}, mj{pairs[j - 1].first, pairs[j - 1].second};
            rb.compare("||m_" + std::to_string(i) + " - m_" + std::to_string(j) + "|| >= 1", free_dist(space, mi, mj),
                       ">=", S(1));
        }
    return rb.finish();
}

// ---------------------------------------------------------------------------
// recursive construction over separated annuli

template <Scalar S>
CertificateReport verify_daugavet_recursion(const SpacePtr<S>& space, const AnnuliFamily& fam, int stages) {
    if (stages < 1 || stages > static_cast<int>(fam.pairs.size()))
        throw ArgumentError("stages must lie between 1 and the number of pairs");
    AnnuliFamily used{{fam.pairs.begin(), fam.pairs.begin() + stages}, {fam.sets.begin(), fam.sets.begin() + stages}};
    auto hyp = check_annuli_hypothesis<S>(*space, used, daugavet_eps<S>);
    if (!hyp.ok_with_order())
        throw PreconditionError("annuli hypothesis fails: " + (hyp.failure.empty() ? "order" : hyp.failure),
                                hyp.violation.value_or(std::vector<int>{}));
    ReportBuilder<S> rb("the recursive McShane construction yields a norm-one f with f(m_s) -> 1", space->tol().eps);
    rb.param("points", static_cast<long long>(space->size()));
    rb.param("stages", static_cast<long long>(stages));
    rb.flag("hypothesis with eps_i = 2^-(i+1)", true,
            {{"quadruples", std::to_string(hyp.quadruples)}, {"min_slack", format_scalar(hyp.min_slack)}});
    auto res = daugavet_recursive_construction(space, used);
    for (const auto& st : res.stages) {
        const std::string s = std::to_string(st.stage);
        // Re-derive both quantities from the stored values.
        PartialFunction<S> pf;
        for (int t = 0; t < st.stage; ++t) {
            pf.points.push_back(used.pairs[t].first);
            pf.values.push_back(res.stages[t].value_u);
            pf.points.push_back(used.pairs[t].second);
            pf.values.push_back(res.stages[t].value_v);
        }
        auto [u, v] = used.pairs[st.stage - 1];
        const S lip = partial_lipschitz(*space, pf).first;
        const S mol = (st.value_u - st.value_v) / space->d(u, v);
        rb.compare("stage " + s + ": Lipschitz constant <= 1 - 2^-" + s, lip, "<=",
                   S(S(1) - inv_pow2<S>(static_cast<unsigned>(st.stage))));
        rb.compare("stage " + s + ": f(m(u_" + s + ",v_" + s + ")) >= 1 - 2^-" + std::to_string(st.stage - 1), mol,
                   ">=", S(S(1) - inv_pow2<S>(static_cast<unsigned>(st.stage - 1))));
    }
    rb.param("extension_norm", res.extension_norm);
    rb.compare("||f|| = 1", res.function.norm(), "=", S(1));
    for (int s = 1; s <= stages; ++s) {
        auto [u, v] = used.pairs[s - 1];
        rb.compare("normalized f(m(u_" + std::to_string(s) + ",v_" + std::to_string(s) + ")) >= 1 - 2^-" +
                       std::to_string(s - 1),
                   res.function.eval({u, v}), ">=", S(S(1) - inv_pow2<S>(static_cast<unsigned>(s - 1))));
    }
    rb.witness("f", detail::values_string(res.function));
    return rb.finish();
}

// ---------------------------------------------------------------------------
// two anchors: sufficient condition holds, annuli condition does not

template <Scalar S>
struct AnnuliSearch {
    int max_pairs = 0;                       // largest k with a valid family
    std::vector<std::pair<int, int>> pairs;  // an optimal family
    std::vector<std::vector<int>> sets;
    std::size_t valid_sets = 0;              // minimal valid (pair, A) options examined
};

/// Exhaustive search for the largest family of pairs with pairwise disjoint
/// sets A_i (u_i in A_i) satisfying the four-point inequality at a uniform
/// eps. Only inclusion-minimal sets are needed. Exponential; small spaces only.
template <Scalar S>
AnnuliSearch<S> search_annuli_families(const FiniteMetricSpace<S>& space, const S& eps, int cap) {
    const int n = space.size();
    if (n > 12) throw ArgumentError("exhaustive annuli search is limited to 12 points");
    require_open_unit(eps, "eps");
    struct Option {
        int u, v;
        unsigned mask;
    };
    std::vector<Option> opts;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            std::vector<unsigned> valid;
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (!(mask >> u & 1u)) continue;
                bool ok = true;
                for (int x = 0; x < n && ok; ++x)
                    for (int y = 0; y < n && ok; ++y)
                        if (!(mask >> x & 1u) && !(mask >> y & 1u))
                            ok = check_annulus_inequality(space, eps, u, v, x, y).holds;
                if (ok) valid.push_back(mask);
            }
            for (unsigned m : valid) {
                bool minimal = true;
                for (unsigned o : valid)
                    if (o != m && (o & m) == o) minimal = false;
                if (minimal) opts.push_back({u, v, m});
            }
        }
    AnnuliSearch<S> out;
    out.valid_sets = opts.size();
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t from, unsigned used) {
        if (static_cast<int>(chosen.size()) > out.max_pairs) {
            out.max_pairs = static_cast<int>(chosen.size());
            out.pairs.clear();
            out.sets.clear();
            for (auto c : chosen) {
                out.pairs.emplace_back(opts[c].u, opts[c].v);
                std::vector<int> A;
                for (int p = 0; p < n; ++p)
                    if (opts[c].mask >> p & 1u) A.push_back(p);
                out.sets.push_back(std::move(A));
            }
        }
        if (out.max_pairs >= cap) return;
        for (std::size_t c = from; c < opts.size(); ++c) {
            if (opts[c].mask & used) continue;
            chosen.push_back(c);
            rec(c + 1, used | opts[c].mask);
            chosen.pop_back();
            if (out.max_pairs >= cap) return;
        }
    };
    rec(0, 0u);
    return out;
}

template <Scalar S>
struct TwoAnchorParams {
    int N = 8;
    std::vector<S> deltas{frac<S>(1, 2), frac<S>(1, 4), frac<S>(1, 16), frac<S>(1, 256)};
    std::vector<int> search_sizes{5, 6, 7};
    S search_eps = frac<S>(1, 4);
};

template <Scalar S>
CertificateReport verify_two_anchor_daugavet(const TwoAnchorParams<S>& prm) {
    if (prm.N < 5) throw ArgumentError("N must be at least 5");
    for (const auto& d : prm.deltas)
        if (!(d > S(0))) throw ArgumentError("delta must be positive");
    auto ta = build_two_anchor_space<S>(prm.N);
    const auto& space = ta.space;
    ReportBuilder<S> rb("the nearest-site function satisfies the segment condition at every site", space->tol().eps);
    rb.param("N", static_cast<long long>(prm.N));
    std::vector<std::string> ds;
    for (const auto& d : prm.deltas) ds.push_back(format_scalar(d));
    rb.param("deltas", detail::join_labels(ds));
    auto f = nearest_point_function(space, ta.non_anchors);
    rb.compare("||f|| = 1", f.norm(), "=", S(1));
    bool values = true;
    for (int p = 0; p < space->size(); ++p) {
        const bool anchor = p == ta.anchor_x || p == ta.anchor_y;
        values = values && f(p) == (anchor ? S(1) : S(0));
    }
    rb.flag("f = 0 on sites and 1 on anchors", values);
    std::size_t triples = 0;
    bool seg_ok = true;
    bool anchors_only = true;
    S worst_margin{};
    bool first = true;
    std::string failure;
    for (int u : ta.non_anchors)
        for (const auto& delta : prm.deltas)
            for (int v = 0; v < space->size(); ++v) {
                if (v == u) continue;
                ++triples;
                std::optional<S> best;
                int arg = -1;
                for (int p : seg(*space, u, v, delta)) {
                    if (p == u) continue;
                    // f(p) - f(u) - (1 - delta) d(u,p); the sufficient condition needs this > 0.
                    S margin = f(p) - f(u) - (S(1) - delta) * space->d(u, p);
                    if (!best || margin > *best) {
                        best = margin;
                        arg = p;
                    }
                }
                if (!best || !(*best > S(0))) {
                    seg_ok = false;
                    if (failure.empty())
                        failure = space->label(u) + "," + space->label(v) + "," + format_scalar(delta);
                    continue;
                }
                if (arg != ta.anchor_x && arg != ta.anchor_y) anchors_only = false;
                if (first || *best < worst_margin) {
                    worst_margin = *best;
                    first = false;
                }
            }
    NamedValues info{{"triples", std::to_string(triples)}};
    if (!first) info.emplace_back("min_margin", format_scalar(worst_margin));
    if (!failure.empty()) info.emplace_back("failure", failure);
    rb.flag("every site u, delta, v != u has p in seg(u,v,delta) minus u with f(p) - f(u) > (1-delta) d(u,p)",
            seg_ok, info);
    rb.flag("witnesses p are anchors", anchors_only);
    for (int M : prm.search_sizes) {
        auto small = build_two_anchor_space<S>(M);
        auto found = search_annuli_families(*small.space, prm.search_eps, 3);
        std::string fam;
        for (std::size_t i = 0; i < found.pairs.size(); ++i) {
            fam += (i ? " | " : "") + small.space->label(found.pairs[i].first) + "-" +
                   small.space->label(found.pairs[i].second) + " A={";
            for (std::size_t t = 0; t < found.sets[i].size(); ++t)
                fam += (t ? "," : "") + small.space->label(found.sets[i][t]);
            fam += "}";
        }
        rb.compare("N=" + std::to_string(M) + ": no three disjoint annuli at eps " + format_scalar(prm.search_eps),
                   S(found.max_pairs), "<=", S(2),
                   {{"max_pairs", std::to_string(found.max_pairs)},
                    {"minimal_options", std::to_string(found.valid_sets)},
                    {"family", fam}});
    }
    return rb.finish();
}

// ---------------------------------------------------------------------------
// proper-space dichotomy diagnostic

template <Scalar S>
struct DichotomyRow {
    S eps;
    std::size_t slice_molecules = 0;
    S min_pair_distance{};    // smallest d(u,v) in the slice
    Molecule closest;
    S escape{};               // largest min(d(0,u), d(0,v)) in the slice
    Molecule farthest;
    bool small_pair = false;  // some slice molecule with d(u,v) < eps
    bool escaping = false;    // some slice molecule with both ends at distance >= radius
    std::optional<std::size_t> packing;  // greedy 1-separated subset of the slice molecules
};

template <Scalar S>
std::vector<DichotomyRow<S>> scan_theorem4_condition6(const LipFunction<S>& f, const std::vector<S>& eps_grid,
                                                      const S& radius, bool with_packing = false) {
    require_unit_norm(f);
    const auto& space = f.space();
    const int base = space->base();
    std::vector<DichotomyRow<S>> rows;
    for (const auto& eps : eps_grid) {
        DichotomyRow<S> row;
        row.eps = eps;
        auto mols = molecules_in_slice(f, eps);
        row.slice_molecules = mols.size();
        bool first = true;
        for (const auto& m : mols) {
            const S& duv = space->d(m.u, m.v);
            const S reach = std::min(space->d(base, m.u), space->d(base, m.v));
            if (first || duv < row.min_pair_distance) {
                row.min_pair_distance = duv;
                row.closest = m;
            }
            if (first || reach > row.escape) {
                row.escape = reach;
                row.farthest = m;
            }
            first = false;
        }
        row.small_pair = !mols.empty() && row.min_pair_distance < eps;
        row.escaping = !mols.empty() && row.escape >= radius;
        if (with_packing) {
            auto rep = greedy_packing(
                mols, [&](const Molecule& a, const Molecule& b) { return free_dist(space, a, b); }, S(1),
                space->tol().eps);
            row.packing = rep.items.size();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace lipfree

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "annuli.hpp"
#include "builders.hpp"
#include "certificate.hpp"
#include "constructions.hpp"
#include "free_space.hpp"

namespace lipfree {

// ---------------------------------------------------------------------------
// slices

/// S(f, alpha) = {mu in B_F : f(mu) > 1 - alpha}, f of norm one.
template <Scalar S>
struct FreeSlice {
    LipFunction<S> functional;
    S alpha;

    FreeSlice(LipFunction<S> f, S a) : functional(std::move(f)), alpha(std::move(a)) {
        require_unit_norm(functional);
        require_slice_width(alpha);
    }

    bool contains(const FreeElement<S>& mu) const {
        return functional.space()->tol().gt(functional.apply(mu), S(1) - alpha);
    }
    bool contains(const Molecule& m) const { return functional.space()->tol().gt(functional.eval(m), S(1) - alpha); }
};

/// w*-slice {g in B_Lip : g(mu) > 1 - alpha}, mu of norm one.
template <Scalar S>
struct LipSlice {
    FreeElement<S> functional;
    S alpha;

    LipSlice(FreeElement<S> mu, S a) : functional(std::move(mu)), alpha(std::move(a)) {
        if (!functional.space()->tol().eq(free_norm(functional).value, S(1)))
            throw ArgumentError("slice functional must have norm 1");
        require_slice_width(alpha);
    }

    bool contains(const LipFunction<S>& g) const {
        const auto& tol = g.space()->tol();
        return tol.le(g.norm(), S(1)) && tol.gt(g.apply(functional), S(1) - alpha);
    }
};

// ---------------------------------------------------------------------------
// packing

template <class T, Scalar S>
struct PackingReport {
    std::vector<T> items;
    std::vector<std::size_t> indices;        // positions in the input list
    S separation;
    std::vector<std::vector<S>> distances;   // between retained items
    bool certified = false;
};

/// Greedy maximal subset (input order) with pairwise distance >= separation.
template <class T, Scalar S, class Oracle>
PackingReport<T, S> greedy_packing(const std::vector<T>& items, Oracle&& dist, const S& separation,
                                   const S& tol = ScalarTraits<S>::default_tolerance()) {
    if (separation < S(0)) throw ArgumentError("separation must be nonnegative");
    const Tolerance<S> t{tol};
    PackingReport<T, S> rep;
    rep.separation = separation;
    for (std::size_t k = 0; k < items.size(); ++k) {
        std::vector<S> row;
        bool ok = true;
        for (std::size_t a = 0; a < rep.indices.size() && ok; ++a) {
            row.push_back(dist(items[rep.indices[a]], items[k]));
            ok = t.ge(row.back(), separation);
        }
        if (!ok) continue;
        for (std::size_t a = 0; a < rep.indices.size(); ++a) rep.distances[a].push_back(row[a]);
        row.push_back(S(0));
        rep.distances.push_back(std::move(row));
        rep.indices.push_back(k);
        rep.items.push_back(items[k]);
    }
    rep.certified = true;
    for (std::size_t a = 0; a < rep.indices.size(); ++a)
        for (std::size_t b = 0; b < rep.indices.size(); ++b)
            if (a != b && !t.ge(rep.distances[a][b], separation)) rep.certified = false;
    return rep;
}

// ---------------------------------------------------------------------------
// separated chains inside a slice

template <Scalar S>
struct SeparatedChain {
    FreeElement<S> center;
    std::vector<FreeElement<S>> elements;       // x_0 = center, x_1, ...
    std::vector<Molecule> molecules;            // molecules behind x_1, x_2, ...
    std::vector<LipFunction<S>> functionals;    // x_0^* = slice functional, x_i^* norming x_0 - x_i
    S separation{};                             // min pairwise distance among elements (2 if fewer than two)
    bool verified = false;
};

/// Greedy finite version of the chain construction: at step n the candidate
/// molecules of the slice are ranked by y* = x_0^* + ... + x_{n-1}^*, and
/// the best one at distance >= 2 - alpha - tol from every chain element is
/// appended, with x_n^* a norming functional of x_0 - x_n. Stops at max_len
/// or when no candidate qualifies.
template <Scalar S>
SeparatedChain<S> build_separated_chain(const FreeElement<S>& center, const FreeSlice<S>& slice, const S& alpha,
                                        std::size_t max_len, const S& tol = ScalarTraits<S>::default_tolerance()) {
    const auto& space = center.space();
    require_same_space(space, slice.functional.space());
    if (!slice.contains(center)) throw PreconditionError("center is not in the slice");
    if (max_len == 0) throw ArgumentError("max_len must be positive");
    SeparatedChain<S> chain{center, {center}, {}, {slice.functional}, S(2), false};
    const S need = S(2) - alpha - tol;
    std::vector<Molecule> cands;
    for (const auto& m : all_molecules(*space))
        if (slice.contains(m)) cands.push_back(m);
    std::map<std::pair<std::size_t, std::size_t>, S> cache;  // (element, candidate) -> distance
    std::vector<char> used(cands.size(), 0);
    while (chain.elements.size() < max_len) {
        std::vector<S> agg(cands.size(), S(0));
        for (std::size_t c = 0; c < cands.size(); ++c)
            for (const auto& xs : chain.functionals) agg[c] += xs.eval(cands[c]);
        std::vector<std::size_t> order(cands.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return agg[a] > agg[b]; });
        std::optional<std::size_t> pick;
        for (auto c : order) {
            if (used[c]) continue;
            auto mol = FreeElement<S>::molecule(space, cands[c]);
            bool far = true;
            for (std::size_t e = 0; e < chain.elements.size() && far; ++e) {
                auto key = std::make_pair(e, c);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, free_dist(chain.elements[e], mol)).first;
                far = it->second >= need;
            }
            if (far) {
                pick = c;
                break;
            }
        }
        if (!pick) break;
        used[*pick] = 1;
        auto xn = FreeElement<S>::molecule(space, cands[*pick]);
        auto norming = free_norm(center - xn);
        chain.functionals.push_back(norming.value > S(0) ? norming.witness.normalized() : norming.witness);
        chain.molecules.push_back(cands[*pick]);
        chain.elements.push_back(std::move(xn));
    }
    // Independent re-verification of the stated properties.
    bool ok = true;
    for (std::size_t a = 1; a < chain.elements.size(); ++a) ok = ok && slice.contains(chain.molecules[a - 1]);
    for (std::size_t a = 0; a < chain.elements.size(); ++a)
        for (std::size_t b = a + 1; b < chain.elements.size(); ++b) {
            S d = free_dist(chain.elements[a], chain.elements[b]);
            if (d < chain.separation) chain.separation = d;
            ok = ok && d >= need;
        }
    chain.verified = ok;
    return chain;
}

// ---------------------------------------------------------------------------
// Δ-type scores

template <Scalar S>
struct DeltaScore {
    S value{};                       // max over slice molecules of ||mu - m||
    Molecule argmax;
    S min_pair_distance{};           // smallest d(u,v) over slice molecules
    Molecule closest;
    std::size_t slice_molecules = 0;
};

template <Scalar S>
DeltaScore<S> delta_score_free(const FreeElement<S>& mu, const FreeSlice<S>& slice) {
    const auto& space = mu.space();
    require_same_space(space, slice.functional.space());
    if (!slice.contains(mu)) throw PreconditionError("element is not in the slice");
    DeltaScore<S> out;
    bool first = true;
    for (const auto& m : all_molecules(*space)) {
        if (!slice.contains(m)) continue;
        ++out.slice_molecules;
        S dist = free_dist(mu, FreeElement<S>::molecule(space, m));
        const S& duv = space->d(m.u, m.v);
        if (first || dist > out.value) {
            out.value = dist;
            out.argmax = m;
        }
        if (first || duv < out.min_pair_distance) {
            out.min_pair_distance = duv;
            out.closest = m;
        }
        first = false;
    }
    return out;
}

template <Scalar S>
struct WStarRadius {
    S value{};
    std::optional<LipFunction<S>> witness;  // g in the closed slice with ||f - g|| = value
    std::pair<int, int> pair{-1, -1};       // (p,q) with (f - g)(m_pq) = value
    std::size_t programs = 0;
};

/// sup ||f - g|| over g in the ball with <mu, g> >= 1 - alpha, computed
/// pair by pair: for (p,q), maximize (f - g)(m_pq) = f(m_pq) + g(m_qp).
/// Pairs are visited in decreasing f(m_pq); pairs that cannot beat the
/// running maximum (f(m_pq) + 1 <= best) are skipped, and the search stops
/// once the universal bound ||f|| + 1 is reached.
template <Scalar S>
WStarRadius<S> wstar_radius_unchecked(const LipFunction<S>& f, const FreeElement<S>& mu, const S& alpha,
                                      unsigned threads = 0) {
    const auto& space = f.space();
    require_same_space(space, mu.space());
    const auto& tol = space->tol();
    auto pairs = detail::ordered_pairs(*space);
    std::vector<S> fv;
    for (auto [p, q] : pairs) fv.push_back(f.eval({p, q}));
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] > fv[b]; });
    WStarRadius<S> out;
    bool have = false;
    const S ceiling = f.norm() + S(1);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::size_t pos = 0;
    while (pos < order.size()) {
        if (have && tol.ge(out.value, ceiling)) break;
        std::vector<std::size_t> batch;
        while (pos < order.size() && batch.size() < threads) {
            auto k = order[pos++];
            if (have && !tol.gt(S(fv[k] + S(1)), out.value)) continue;
            batch.push_back(k);
        }
        if (batch.empty()) continue;
        std::vector<LpSolution<S>> sols(batch.size());
        parallel_for(
            batch.size(),
            [&](std::size_t b) {
                auto [p, q] = pairs[batch[b]];
                LipBallProgram<S> prog(FreeElement<S>::molecule(space, q, p));
                prog.add(mu, Relation::ge, S(1) - alpha);
                sols[b] = solve_lip_ball(prog);
            },
            threads);
        out.programs += batch.size();
        for (std::size_t b = 0; b < batch.size(); ++b) {
            if (!sols[b].optimal()) continue;
            S val = fv[batch[b]] + sols[b].value;
            if (!have || val > out.value) {
                out.value = val;
                out.witness = std::move(sols[b].argument);
                out.pair = pairs[batch[b]];
                have = true;
            }
        }
    }
    if (!have) throw PreconditionError("the closed slice is empty");
    return out;
}

template <Scalar S>
WStarRadius<S> wstar_delta_radius(const LipFunction<S>& f, const FreeElement<S>& mu, const S& alpha,
                                  unsigned threads = 0) {
    require_slice_width(alpha);
    if (!f.space()->tol().gt(f.apply(mu), S(1) - alpha)) throw PreconditionError("f is not in the w*-slice");
    return wstar_radius_unchecked(f, mu, alpha, threads);
}

template <Scalar S>
struct WStarProfile {
    std::vector<WStarRadius<S>> radii;
    S minimum{};
    std::size_t argmin = 0;
};

template <Scalar S>
WStarProfile<S> wstar_daugavet_profile(const LipFunction<S>& f,
                                       const std::vector<std::pair<FreeElement<S>, S>>& family,
                                       unsigned threads = 0) {
    if (family.empty()) throw ArgumentError("slice family is empty");
    WStarProfile<S> out;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& [mu, alpha] = family[k];
        require_slice_width(alpha);
        out.radii.push_back(wstar_radius_unchecked(f, mu, alpha, threads));
        if (k == 0 || out.radii.back().value < out.minimum) {
            out.minimum = out.radii.back().value;
            out.argmin = k;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// separated annuli: hypothesis and conclusion

/// Random norm-one elements, each supported outside one set A_j that
/// misses the base point (1 to 4 support points, integer weights).
template <Scalar S>
std::vector<FreeElement<S>> annuli_test_battery(const SpacePtr<S>& space, const AnnuliFamily& fam, std::size_t count,
                                                Rng& rng) {
    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < fam.sets.size(); ++j)
        if (std::find(fam.sets[j].begin(), fam.sets[j].end(), space->base()) == fam.sets[j].end())
            eligible.push_back(j);
    if (eligible.empty()) throw ArgumentError("every set contains the base point");
    std::vector<FreeElement<S>> out;
    while (out.size() < count) {
        auto j = eligible[rng.uniform(0, static_cast<std::int64_t>(eligible.size()) - 1)];
        std::vector<int> pool;
        for (int p = 0; p < space->size(); ++p)
            if (p != space->base() &&
                std::find(fam.sets[j].begin(), fam.sets[j].end(), p) == fam.sets[j].end())
                pool.push_back(p);
        if (pool.empty()) continue;
        FreeElement<S> F(space);
        const auto support = rng.uniform(1, 4);
        for (std::int64_t s = 0; s < support; ++s) {
            int p = pool[rng.uniform(0, static_cast<std::int64_t>(pool.size()) - 1)];
            F.add(p, S(rng.uniform(-5, 5)));
        }
        if (F.is_zero()) continue;
        S nrm = free_norm(F).value;
        out.push_back(S(1) / nrm * F);
    }
    return out;
}

/// Hypothesis (sets, membership, four-point inequality with uniform eps)
/// and conclusion max_i ||F + m_{u_i v_i}|| >= 2 - 2 eps for each F of the
/// battery. Lower bounds come from the case-extension witness g; exact
/// norms from the LP.
template <Scalar S>
CertificateReport verify_separated_annuli(const SpacePtr<S>& space, const AnnuliFamily& fam, const S& eps,
                                          const std::vector<FreeElement<S>>& battery) {
    ReportBuilder<S> rb("separated annuli give max_i ||F + m_i|| >= 2 - 2 eps", space->tol().eps);
    rb.param("points", static_cast<long long>(space->size()));
    rb.param("pairs", static_cast<long long>(fam.pairs.size()));
    rb.param("eps", eps);
    rb.param("battery", static_cast<long long>(battery.size()));
    auto hyp = check_annuli_hypothesis<S>(*space, fam, [&](int) { return eps; });
    NamedValues where;
    if (hyp.violation) {
        std::string w;
        for (int x : *hyp.violation) w += (w.empty() ? "" : ",") + std::to_string(x);
        where.emplace_back("violation", w);
    }
    rb.flag("sets A_i pairwise disjoint", hyp.disjoint, where);
    rb.flag("u_i in A_i", hyp.u_inside);
    rb.flag("four-point inequality for all x,y outside A_i", hyp.inequality,
            {{"quadruples", std::to_string(hyp.quadruples)}, {"min_slack", format_scalar(hyp.min_slack)}});
    if (!hyp.ok()) return rb.finish();
    const S target = S(2) - S(2) * eps;
    for (std::size_t b = 0; b < battery.size(); ++b) {
        const auto& F = battery[b];
        require_same_space(space, F.space());
        auto fn = free_norm(F);
        rb.compare("battery element " + std::to_string(b) + " has norm 1", fn.value, "=", S(1));
        const auto& f = fn.witness;
        std::optional<S> best_lower;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
            auto [u, v] = fam.pairs[i];
            auto g = annulus_case_extension(f, fam.sets[i], u, v, eps);
            S lower = g.apply(F) + g.eval({u, v});
            if (!best_lower || lower > *best_lower) {
                best_lower = lower;
                best_i = i;
            }
        }
        auto norm_at = [&](std::size_t i) {
            return free_norm(F + FreeElement<S>::molecule(space, fam.pairs[i].first, fam.pairs[i].second)).value;
        };
        S best = norm_at(best_i);
        std::size_t arg = best_i;
        if (!space->tol().ge(best, target))
            for (std::size_t i = 0; i < fam.pairs.size(); ++i) {
                S val = norm_at(i);
                if (val > best) {
                    best = val;
                    arg = i;
                }
            }
        rb.compare("max_i ||F_" + std::to_string(b) + " + m_i|| >= 2 - 2 eps", best, ">=", target,
                   {{"pair", std::to_string(arg + 1)},
                    {"witness_lower_bound", format_scalar(*best_lower)},
                    {"witness_pair", std::to_string(best_i + 1)}});
    }
    return rb.finish();
}

}  // namespace lipfree

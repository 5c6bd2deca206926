#include <gtest/gtest.h>

#include "lipfree/lipfree.hpp"
#include "oracles.hpp"

using namespace lipfree;
using Q = Rational;

TEST(Slices, Membership) {
    auto s = build_half_line<Q>(3);
    auto f = LipFunction<Q>::distance_to_base(s);
    FreeSlice<Q> slice(f, Q(1, 2));
    EXPECT_TRUE(slice.contains(Molecule{3, 0}));
    EXPECT_FALSE(slice.contains(Molecule{0, 3}));
    EXPECT_THROW(FreeSlice<Q>(f.scaled(Q(1, 2)), Q(1)), ArgumentError);
    LipSlice<Q> ws(FreeElement<Q>::molecule(s, 2, 0), Q(1, 4));
    EXPECT_TRUE(ws.contains(f));
    EXPECT_FALSE(ws.contains(-f));
    EXPECT_THROW(LipSlice<Q>(FreeElement<Q>::delta(s, 3), Q(1)), ArgumentError);
}

TEST(Packing, TrivialCases) {
    auto s = build_half_line<Q>(2);
    auto mols = all_molecules(*s);
    auto dist = [&](const Molecule& a, const Molecule& b) { return free_dist(s, a, b); };
    auto all = greedy_packing(mols, dist, Q(0));
    EXPECT_EQ(all.items.size(), mols.size());
    EXPECT_TRUE(all.certified);
    auto two = greedy_packing(std::vector<Molecule>{{0, 1}, {1, 0}}, dist, Q(2));
    EXPECT_EQ(two.items.size(), 2u);
    EXPECT_EQ(two.distances[0][1], Q(2));
    EXPECT_THROW(greedy_packing(mols, dist, Q(-1)), ArgumentError);
}

TEST(Packing, RetainedItemsAreSeparated) {
    Rng rng(157);
    auto s = random_space<Q>(6, rng);
    auto mols = all_molecules(*s);
    auto dist = [&](const Molecule& a, const Molecule& b) { return free_dist(s, a, b); };
    auto rep = greedy_packing(mols, dist, Q(3, 2));
    ASSERT_TRUE(rep.certified);
    for (std::size_t a = 0; a < rep.items.size(); ++a)
        for (std::size_t b = a + 1; b < rep.items.size(); ++b) EXPECT_GE(dist(rep.items[a], rep.items[b]), Q(3, 2));
    // maximality: every dropped molecule is close to a retained one
    for (std::size_t k = 0; k < mols.size(); ++k) {
        if (std::find(rep.indices.begin(), rep.indices.end(), k) != rep.indices.end()) continue;
        bool close = false;
        for (const auto& r : rep.items) close = close || dist(r, mols[k]) < Q(3, 2);
        EXPECT_TRUE(close);
    }
}

TEST(Chain, ReverifiesIndependently) {
    auto ex = build_example2_space<Q>(3);
    auto f = example2_function(ex);
    const auto& L = ex.layout;
    const Q alpha(1, 2);
    FreeSlice<Q> slice(f, alpha);
    auto center = FreeElement<Q>::molecule(ex.space, L.x[2], L.y[2]);
    auto chain = build_separated_chain(center, slice, alpha, 6);
    EXPECT_TRUE(chain.verified);
    EXPECT_GE(chain.elements.size(), 2u);
    for (std::size_t a = 0; a < chain.elements.size(); ++a)
        for (std::size_t b = a + 1; b < chain.elements.size(); ++b)
            EXPECT_GE(free_dist(chain.elements[a], chain.elements[b]), Q(2) - alpha);
    for (const auto& m : chain.molecules) EXPECT_TRUE(slice.contains(m));
}

TEST(DeltaScore, BoundedByTwo) {
    Rng rng(163);
    for (int t = 0; t < 10; ++t) {
        auto s = random_space<Q>(6, rng);
        auto f = random_unit_function(s, rng);
        auto [p, q] = f.norm_pair();
        auto mu = FreeElement<Q>::molecule(s, p, q);
        FreeSlice<Q> slice(f, Q(1, 2));
        auto sc = delta_score_free(mu, slice);
        EXPECT_LE(sc.value, Q(2));
        EXPECT_GE(sc.slice_molecules, 1u);
        EXPECT_EQ(sc.value, free_dist(s, {p, q}, sc.argmax));
    }
}

TEST(WStar, FullWidthGivesTwo) {
    Rng rng(167);
    for (int t = 0; t < 10; ++t) {
        auto s = random_space<Q>(5, rng);
        auto f = random_unit_function(s, rng);
        auto mu = FreeElement<Q>::molecule(s, 1, 2);
        auto r = wstar_radius_unchecked(f, mu, Q(2));
        EXPECT_EQ(r.value, Q(2));
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(lip_dist(f, *r.witness), Q(2));
    }
}

TEST(WStar, MonotoneInAlpha) {
    Rng rng(173);
    for (int t = 0; t < 10; ++t) {
        auto s = random_space<Q>(5, rng);
        auto f = random_unit_function(s, rng);
        auto [p, q] = f.norm_pair();
        auto mu = FreeElement<Q>::molecule(s, p, q);
        Q prev(0);
        for (Q alpha : {Q(1, 16), Q(1, 4), Q(1, 2), Q(1), Q(2)}) {
            auto r = wstar_delta_radius(f, mu, alpha);
            EXPECT_GE(r.value, prev);
            EXPECT_LE(r.value, Q(2));
            // witness lies in the closed slice and realizes the value
            EXPECT_LE(r.witness->norm(), Q(1));
            EXPECT_GE(r.witness->apply(mu), Q(1) - alpha);
            EXPECT_EQ((f - *r.witness).eval({r.pair.first, r.pair.second}), r.value);
            prev = r.value;
        }
    }
}

TEST(WStar, MatchesVertexEnumeration) {
    Rng rng(179);
    for (int t = 0; t < 40; ++t) {
        auto s = random_space<Q>(2 + t % 3, rng, 5, 2);
        auto f = random_unit_function(s, rng, 4);
        auto [p, q] = f.norm_pair();
        auto mu = FreeElement<Q>::molecule(s, p, q);
        const Q alpha(rng.uniform(1, 8), 4);
        auto expect = oracle::wstar_radius_by_vertices(f, mu, alpha);
        ASSERT_TRUE(expect.has_value());
        EXPECT_EQ(wstar_delta_radius(f, mu, alpha).value, *expect);
    }
}

TEST(WStar, PreconditionsAndProfile) {
    auto s = build_half_line<Q>(3);
    auto f = LipFunction<Q>::distance_to_base(s);
    auto mu = FreeElement<Q>::molecule(s, 0, 3);
    EXPECT_THROW(wstar_delta_radius(f, mu, Q(1, 2)), PreconditionError);
    auto m = FreeElement<Q>::molecule(s, 3, 0);
    auto prof = wstar_daugavet_profile(f, {{m, Q(1, 2)}, {m, Q(1)}});
    ASSERT_EQ(prof.radii.size(), 2u);
    EXPECT_EQ(prof.minimum, std::min(prof.radii[0].value, prof.radii[1].value));
}

TEST(SeparatedAnnuli, BatteryAndCertificate) {
    auto inst = build_nested_annuli_space<Q>(4);
    AnnuliFamily fam{inst.pairs, inst.sets};
    Rng rng(181);
    auto battery = annuli_test_battery(inst.space, fam, 12, rng);
    ASSERT_EQ(battery.size(), 12u);
    for (const auto& F : battery) EXPECT_EQ(free_norm(F).value, Q(1));
    auto rep = verify_separated_annuli(inst.space, fam, Q(1, 4), battery);
    EXPECT_TRUE(rep.overall) << (rep.first_failure() ? rep.first_failure()->description : "");
}

TEST(SeparatedAnnuli, OverlapFailsTheHypothesis) {
    auto inst = build_nested_annuli_space<Q>(3);
    AnnuliFamily fam{inst.pairs, inst.sets};
    fam.sets[1].push_back(fam.sets[2].front());
    Rng rng(191);
    auto battery = annuli_test_battery(inst.space, AnnuliFamily{inst.pairs, inst.sets}, 4, rng);
    auto rep = verify_separated_annuli(inst.space, fam, Q(1, 4), battery);
    EXPECT_FALSE(rep.overall);
}

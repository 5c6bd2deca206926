#include <gtest/gtest.h>

#include "lipfree/lipfree.hpp"
#include "oracles.hpp"

using namespace lipfree;
using Q = Rational;

namespace {

FreeElement<Q> random_element(const SpacePtr<Q>& s, Rng& rng) {
    FreeElement<Q> mu(s);
    const int k = static_cast<int>(rng.uniform(1, std::min(5, s->size())));
    for (int i = 0; i < k; ++i) mu.add(static_cast<int>(rng.uniform(0, s->size() - 1)), Q(rng.uniform(-6, 6), rng.uniform(1, 3)));
    return mu;
}

}  // namespace

TEST(SolveLipBall, ZeroObjective) {
    auto s = build_half_line<Q>(3);
    auto sol = solve_lip_ball(LipBallProgram<Q>(FreeElement<Q>(s)));
    ASSERT_TRUE(sol.optimal());
    EXPECT_EQ(sol.value, Q(0));
}

TEST(SolveLipBall, MoleculeHasValueOne) {
    auto s = build_example1_space<Q>(5);
    auto sol = solve_lip_ball(LipBallProgram<Q>(FreeElement<Q>::molecule(s, 2, 4)));
    ASSERT_TRUE(sol.optimal());
    EXPECT_EQ(sol.value, Q(1));
    EXPECT_EQ(sol.argument->eval({2, 4}), Q(1));
}

TEST(SolveLipBall, DeltaGivesDistanceToBase) {
    Rng rng(3);
    auto s = random_space<Q>(6, rng);
    for (int p = 1; p < 6; ++p) {
        auto sol = solve_lip_ball(LipBallProgram<Q>(FreeElement<Q>::delta(s, p)));
        EXPECT_EQ(sol.value, s->d(0, p));
    }
}

TEST(SolveLipBall, SideConstraintsAndInfeasibility) {
    auto s = build_half_line<Q>(2);
    // max g(2) subject to g(1) <= 0 is 1
    LipBallProgram<Q> prog(FreeElement<Q>::delta(s, 2));
    prog.add(FreeElement<Q>::delta(s, 1), Relation::le, Q(0));
    auto sol = solve_lip_ball(prog);
    ASSERT_TRUE(sol.optimal());
    EXPECT_EQ(sol.value, Q(1));
    LipBallProgram<Q> bad(FreeElement<Q>::delta(s, 2));
    bad.add(FreeElement<Q>::delta(s, 1), Relation::ge, Q(5));
    EXPECT_EQ(solve_lip_ball(bad).status, LpStatus::infeasible);
}

TEST(SolveLipBall, DroppedPairCanBeUnbounded) {
    auto s = build_half_line<Q>(1);
    LipBallProgram<Q> prog(FreeElement<Q>::molecule(s, 1, 0));
    prog.drop_pair(1, 0);
    EXPECT_EQ(solve_lip_ball(prog).status, LpStatus::unbounded);
}

TEST(SolveLipBall, DualCertificateReproducesValue) {
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        auto s = random_space<Q>(2 + t % 7, rng);
        auto mu = random_element(s, rng);
        auto sol = solve_lip_ball(LipBallProgram<Q>(mu));
        ASSERT_TRUE(sol.optimal());
        Q total(0);
        std::vector<Q> row(s->size(), Q(0));
        for (const auto& w : sol.dual) {
            EXPECT_GE(w.weight, Q(0));
            ASSERT_GE(w.p, 0);
            total += w.weight * s->d(w.p, w.q);
            row[w.p] += w.weight;
            row[w.q] -= w.weight;
        }
        EXPECT_EQ(total, sol.value);
        for (int p = 0; p < s->size(); ++p) {
            if (p != s->base()) {
                EXPECT_EQ(row[p], mu.weight(p));
            }
        }
    }
}

TEST(Transport, ZeroElementHasEmptyPlan) {
    auto s = build_half_line<Q>(3);
    auto plan = min_cost_transport(*s, FreeElement<Q>(s));
    EXPECT_TRUE(plan.flow.empty());
    EXPECT_EQ(plan.cost, Q(0));
}

TEST(Transport, DifferenceOfDeltasIsOneArc) {
    auto s = build_half_line<Q>(4);
    auto mu = FreeElement<Q>::delta(s, 1) - FreeElement<Q>::delta(s, 3);
    auto plan = min_cost_transport(*s, mu);
    ASSERT_EQ(plan.flow.size(), 1u);
    EXPECT_EQ(plan.flow.begin()->first, (std::pair<int, int>{1, 3}));
    EXPECT_EQ(plan.flow.begin()->second, Q(1));
    EXPECT_EQ(plan.cost, Q(2));
}

TEST(Transport, MatchesVertexEnumerationOnSmallSpaces) {
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        auto s = random_space<Q>(2 + t % 3, rng, 5, 3);
        auto mu = random_element(s, rng);
        auto plan = min_cost_transport(*s, mu);
        EXPECT_TRUE(oracle::plan_is_feasible(*s, mu, plan, Q(0)));
        EXPECT_EQ(plan.cost, oracle::free_norm_by_vertices(mu));
    }
}

TEST(Duality, PlanAndWitnessCertifyEachOther) {
    Rng rng(29);
    for (int t = 0; t < 40; ++t) {
        auto s = random_space<Q>(3 + t % 10, rng);
        auto mu = random_element(s, rng);
        auto fn = free_norm(mu);
        EXPECT_EQ(fn.value, fn.plan.cost);
        EXPECT_TRUE(oracle::plan_is_feasible(*s, mu, fn.plan, Q(0)));
        EXPECT_TRUE(oracle::dual_is_feasible(fn.witness, mu, fn.value, Q(0)));
    }
}

TEST(Duality, FloatModeWithinTolerance) {
    Rng rng(31);
    for (int t = 0; t < 30; ++t) {
        auto s = random_space<double>(3 + t % 10, rng);
        FreeElement<double> mu(s);
        for (int i = 0; i < 4; ++i) mu.add(static_cast<int>(rng.uniform(0, s->size() - 1)), double(rng.uniform(-6, 6)) / 3);
        auto fn = free_norm(mu);
        EXPECT_NEAR(fn.value, fn.plan.cost, 1e-9);
        EXPECT_TRUE(oracle::plan_is_feasible(*s, mu, fn.plan, 1e-9));
        EXPECT_TRUE(oracle::dual_is_feasible(fn.witness, mu, fn.value, 1e-9));
    }
}

TEST(MaxOverPairs, ThresholdMinusTwoIsUnconstrained) {
    Rng rng(37);
    for (int t = 0; t < 10; ++t) {
        auto s = random_space<Q>(5, rng);
        auto f = random_unit_function(s, rng);
        auto obj = FreeElement<Q>::molecule(s, 1, 3);
        auto pm = max_over_pairs(*s, f, Q(-2), obj);
        ASSERT_EQ(pm.status, LpStatus::optimal);
        EXPECT_EQ(pm.value, Q(1));
        EXPECT_EQ(pm.pairs_considered, 20u);
    }
}

TEST(MaxOverPairs, ThresholdTwoOnTwoPoints) {
    auto s = build_half_line<Q>(1);
    auto f = LipFunction<Q>::distance_to_base(s);
    // only g = -f satisfies (f - g)(m_10) >= 2, and then g(m_10) = -1
    auto pm = max_over_pairs(*s, f, Q(2), FreeElement<Q>::molecule(s, 1, 0));
    ASSERT_EQ(pm.status, LpStatus::optimal);
    EXPECT_EQ(pm.value, Q(-1));
    EXPECT_EQ(pm.witness, (std::pair<int, int>{1, 0}));
    EXPECT_THROW(max_over_pairs(*s, f, Q(3), FreeElement<Q>::molecule(s, 1, 0)), ArgumentError);
}

TEST(MaxOverPairs, ArgumentSatisfiesItsPairConstraint) {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        auto s = random_space<Q>(6, rng);
        auto f = random_unit_function(s, rng);
        const Q thr(3, 2);
        auto pm = max_over_pairs(*s, f, thr, FreeElement<Q>::molecule(s, 2, 4));
        if (pm.status != LpStatus::optimal) continue;
        auto [p, q] = pm.witness;
        EXPECT_GE((f - *pm.argument).eval({p, q}), thr);
        EXPECT_LE(pm.argument->norm(), Q(1));
        EXPECT_EQ(pm.argument->eval({2, 4}), pm.value);
    }
}

TEST(StrictUpper, TightPairsUseSecondProgram) {
    auto s = build_half_line<Q>(1);
    auto f = LipFunction<Q>::distance_to_base(s);
    // (f - g)(m_10) > 1 forces g(m_10) < 0, and the closed maximum 0 sits on the boundary
    auto c = certify_strict_upper(*s, f, Q(1), FreeElement<Q>::molecule(s, 1, 0), Q(0));
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.closed_max, Q(0));
    EXPECT_FALSE(c.tight_pairs.empty());
    // g = -f has g(m_01) = 1 and (f - g)(m_10) = 2, so the bound 1 is attained
    auto obj = FreeElement<Q>::molecule(s, 0, 1);
    auto t = certify_strict_upper(*s, f, Q(1), obj, Q(1));
    EXPECT_FALSE(t.holds);
    EXPECT_FALSE(t.tight_pairs.empty());
    auto d = certify_strict_upper(*s, f, Q(1), obj, Q(1, 2));
    EXPECT_FALSE(d.holds);
    EXPECT_TRUE(d.violation.has_value());
}

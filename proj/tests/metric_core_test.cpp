#include <gtest/gtest.h>

#include "lipfree/lipfree.hpp"

using namespace lipfree;
using Q = Rational;

TEST(Validate, SinglePointIsAMetric) {
    auto s = make_space<Q>({"o"}, 0, {{Q(0)}});
    EXPECT_TRUE(validate(*s).ok);
}

TEST(Validate, ReportsTriangleViolationWithSlack) {
    auto s = make_space<Q>({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
    auto rep = validate(*s);
    ASSERT_FALSE(rep.ok);
    ASSERT_EQ(rep.violations.size(), 1u);
    const auto& v = rep.violations[0];
    EXPECT_EQ(v.kind, ViolationKind::triangle);
    EXPECT_EQ(v.indices, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(v.slack, Q(3));
}

TEST(Validate, ReportsEveryAxiom) {
    auto s = make_space<Q>({{1, 2, 1}, {3, 0, 0}, {1, 0, 0}});
    auto rep = validate(*s);
    int diag = 0, sym = 0, pos = 0;
    for (const auto& v : rep.violations) {
        diag += v.kind == ViolationKind::diagonal;
        sym += v.kind == ViolationKind::symmetry;
        pos += v.kind == ViolationKind::positivity;
    }
    EXPECT_EQ(diag, 1);
    EXPECT_EQ(sym, 1);
    EXPECT_EQ(pos, 1);
}

TEST(Validate, BuilderSpacesAreMetrics) {
    EXPECT_TRUE(validate(*build_example1_space<Q>(10)).ok);
    EXPECT_TRUE(validate(*build_example2_space<Q>(5).space).ok);
    EXPECT_TRUE(validate(*build_two_anchor_space<Q>(9).space).ok);
    EXPECT_TRUE(validate(*build_half_line<Q>(12)).ok);
    EXPECT_TRUE(validate(*build_regular_simplex<Q>(6, Q(3, 2))).ok);
    EXPECT_TRUE(validate(*build_nested_annuli_space<Q>(6).space).ok);
    EXPECT_TRUE(validate(*build_delta_hat_space<Q>(10, Q(1), 3).space).ok);
}

TEST(Validate, RandomSpacesAreMetrics) {
    Rng rng(7);
    for (int t = 0; t < 40; ++t) EXPECT_TRUE(validate(*random_space<Q>(2 + t % 9, rng)).ok);
}

TEST(Structure, RejectsMalformedInput) {
    EXPECT_THROW(make_space<Q>({}, 0, {}), StructuralError);
    EXPECT_THROW(make_space<Q>({"a", "b"}, 0, {{0, 1}}), StructuralError);
    EXPECT_THROW(make_space<Q>({"a", "b"}, 0, {{0, 1}, {1}}), StructuralError);
    EXPECT_THROW(make_space<Q>({"a", "a"}, 0, {{0, 1}, {1, 0}}), StructuralError);
    EXPECT_THROW(make_space<Q>({"a", "b"}, 2, {{0, 1}, {1, 0}}), StructuralError);
}

TEST(Seg, WholeLineForWideSegment) {
    auto s = build_half_line<Q>(2);
    EXPECT_EQ(seg(*s, 0, 2, Q(1, 2)), (std::vector<int>{0, 1, 2}));
}

TEST(Seg, MonotoneInDelta) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        auto s = random_space<Q>(7, rng);
        std::vector<int> prev;
        for (Q delta : {Q(1, 8), Q(1, 2), Q(1), Q(3), Q(20)}) {
            auto cur = seg(*s, 0, 1, delta);
            EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
            EXPECT_NE(std::find(cur.begin(), cur.end(), 0), cur.end());
            EXPECT_NE(std::find(cur.begin(), cur.end(), 1), cur.end());
            prev = cur;
        }
    }
}

TEST(Seg, RejectsBadArguments) {
    auto s = build_half_line<Q>(2);
    EXPECT_THROW(seg(*s, 1, 1, Q(1)), ArgumentError);
    EXPECT_THROW(seg(*s, 0, 1, Q(0)), ArgumentError);
    EXPECT_THROW(seg(*s, 0, 9, Q(1)), StructuralError);
}

TEST(Builders, ExampleOneDistances) {
    auto s = build_example1_space<Q>(6);
    EXPECT_EQ(s->d(0, 1), Q(5, 2));
    EXPECT_EQ(s->d(1, 2), Q(17, 6));
    EXPECT_EQ(s->base(), 0);
    EXPECT_EQ(s->label(0), "1");
}

TEST(Builders, ExampleTwoDistances) {
    auto ex = build_example2_space<Q>(4);
    const auto& s = *ex.space;
    const auto& L = ex.layout;
    EXPECT_EQ(s.size(), 16);
    EXPECT_EQ(s.d(L.u[2], L.x[1]), Q(1));
    EXPECT_EQ(s.d(L.x[1], L.y[1]), Q(2));
    EXPECT_EQ(s.d(L.u[2], L.u[3]), Q(1));
    EXPECT_EQ(s.d(L.v[3], L.y[2]), Q(1));
    EXPECT_EQ(s.d(L.u[1], L.x[2]), Q(2));
    EXPECT_EQ(s.base(), L.x[1]);
    EXPECT_EQ(L.core(2).size(), 8u);
}

TEST(Builders, TwoAnchorDistances) {
    auto ta = build_two_anchor_space<Q>(6);
    const auto& s = *ta.space;
    EXPECT_EQ(s.d(ta.anchor_x, 0), Q(1));
    EXPECT_EQ(s.d(ta.anchor_x, ta.anchor_y), Q(2));
    EXPECT_EQ(s.d(0, 1), Q(2));
    EXPECT_EQ(ta.non_anchors.size(), 4u);
}

TEST(Builders, NestedAnnuliSatisfyHypothesis) {
    for (bool inside : {true, false}) {
        auto inst = build_nested_annuli_space<Q>(7, inside);
        auto rep = check_annuli_hypothesis<Q>(*inst.space, AnnuliFamily{inst.pairs, inst.sets}, daugavet_eps<Q>);
        EXPECT_TRUE(rep.ok_with_order()) << rep.failure;
        EXPECT_EQ(inst.pairs.front().first, inst.space->base());
    }
}

TEST(Builders, DeltaHatPairsAreSeparated) {
    auto ps = build_delta_hat_space<Q>(9, Q(2), 2);
    EXPECT_TRUE(check_separated_pairs(*ps.space, ps.a, ps.pairs, Q(0)));
    EXPECT_EQ(ps.space->d(ps.pairs[2].first, ps.pairs[2].second), Q(4, 3));
}

TEST(Extraction, SimplexGivesFullSequence) {
    auto s = build_regular_simplex<Q>(9, Q(3));
    auto ext = extract_separated_pairs(*s, Q(1, 100), ExtractionMode::equidistant);
    EXPECT_EQ(ext.sequence.size(), 9u);
    EXPECT_EQ(ext.a, Q(3));
    EXPECT_TRUE(check_equidistant_sequence(*s, ext.a, ext.sequence, Q(1, 100)));
}

TEST(Extraction, TwoAnchorPairsAtScaleTwo) {
    auto ta = build_two_anchor_space<Q>(12);
    auto ext = extract_separated_pairs(*ta.space, Q(1, 100), ExtractionMode::pairs);
    ASSERT_FALSE(ext.empty());
    EXPECT_EQ(ext.a, Q(2));
    EXPECT_TRUE(check_separated_pairs(*ta.space, ext.a, ext.pairs, Q(1, 100)));
}

TEST(Extraction, SinglePointIsEmpty) {
    auto s = make_space<Q>({"o"}, 0, {{Q(0)}});
    EXPECT_TRUE(extract_separated_pairs(*s, Q(1, 100), ExtractionMode::pairs).empty());
    EXPECT_TRUE(extract_separated_pairs(*s, Q(1, 100), ExtractionMode::equidistant).empty());
}

TEST(Extraction, ResultsAlwaysReverify) {
    Rng rng(5);
    for (int t = 0; t < 15; ++t) {
        auto s = random_space<Q>(8, rng, 6, 2);
        auto e = extract_separated_pairs(*s, Q(1, 10), ExtractionMode::equidistant);
        if (!e.empty()) {
            EXPECT_TRUE(check_equidistant_sequence(*s, e.a, e.sequence, Q(1, 10)));
        }
        auto p = extract_separated_pairs(*s, Q(1, 10), ExtractionMode::pairs);
        if (!p.empty()) {
            EXPECT_TRUE(check_separated_pairs(*s, p.a, p.pairs, Q(1, 10)));
        }
    }
}

TEST(AnnulusLemma, HalfLineSweepPasses) {
    auto s = build_half_line<Q>(39);
    auto rep = sweep_annulus_lemma(*s, Q(1), Q(1, 2));
    EXPECT_TRUE(rep.ok());
    EXPECT_GT(rep.quadruples, 0u);
}

TEST(AnnulusLemma, InequalityArithmetic) {
    auto s = build_half_line<Q>(4);
    // d(0,3) + d(1,4) = 6 against (1/2)(1 + 1) = 1
    auto c = check_annulus_inequality(*s, Q(1, 2), 0, 1, 3, 4);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.slack, Q(5));
    EXPECT_THROW(check_annulus_inequality(*s, Q(1), 0, 1, 3, 4), ArgumentError);
}

TEST(AnnuliHypothesis, OverlapIsReported) {
    auto inst = build_nested_annuli_space<Q>(3);
    AnnuliFamily fam{inst.pairs, inst.sets};
    fam.sets[1].push_back(fam.sets[0].front());
    auto rep = check_annuli_hypothesis<Q>(*inst.space, fam, daugavet_eps<Q>);
    EXPECT_FALSE(rep.disjoint);
    EXPECT_FALSE(rep.ok());
    EXPECT_EQ(rep.failure, "sets overlap");
}

TEST(AnnuliHypothesis, MissingUIsReported) {
    auto inst = build_nested_annuli_space<Q>(3);
    AnnuliFamily fam{inst.pairs, inst.sets};
    auto& A = fam.sets[2];
    A.erase(std::find(A.begin(), A.end(), fam.pairs[2].first));
    EXPECT_FALSE(check_annuli_hypothesis<Q>(*inst.space, fam, daugavet_eps<Q>).u_inside);
}

TEST(Scalars, ParseAndFormat) {
    EXPECT_EQ(parse_scalar<Q>("5/2"), Q(5, 2));
    EXPECT_EQ(parse_scalar<Q>("0.25"), Q(1, 4));
    EXPECT_EQ(parse_scalar<Q>("-3"), Q(-3));
    EXPECT_EQ(format_scalar(Q(6, 4)), "3/2");
    EXPECT_THROW(parse_scalar<Q>("1/0"), ParseError);
    EXPECT_THROW(parse_scalar<Q>("abc"), ParseError);
    EXPECT_DOUBLE_EQ(parse_scalar<double>("1/4"), 0.25);
}

#include <gtest/gtest.h>

#include <random>

#include "capmin/geometry.hpp"

using namespace capmin;

namespace {

using S = BranchSquare;

TEST(Chordal, KnownValues) {
    EXPECT_DOUBLE_EQ(chordal_distance(cplx(0, 0), cplx(0, 0)), 0.0);
    EXPECT_DOUBLE_EQ(chordal_distance(cplx(0, 0), ComplexPoint::infinity()), 1.0);
    EXPECT_DOUBLE_EQ(chordal_distance(cplx(1, 0), cplx(-1, 0)), 1.0);
    EXPECT_DOUBLE_EQ(chordal_distance(ComplexPoint::infinity(), ComplexPoint::infinity()), 0.0);
}

TEST(Chordal, TriangleInequalityAndRange) {
    std::mt19937_64 rng(7);
    std::cauchy_distribution<double> C(0.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const cplx a(C(rng), C(rng)), b(C(rng), C(rng)), c(C(rng), C(rng));
        const double ab = chordal_distance(a, b), bc = chordal_distance(b, c), ac = chordal_distance(a, c);
        EXPECT_LE(ac, ab + bc + 1e-12);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 1.0 + 1e-15);
        EXPECT_DOUBLE_EQ(ab, chordal_distance(b, a));
    }
}

TEST(ComplexPointTest, RejectsNonFinite) {
    EXPECT_THROW(ComplexPoint(cplx(std::nan(""), 0.0)), DomainError);
    EXPECT_THROW(ComplexPoint::infinity().value(), DomainError);
}

TEST(CompactumTest, ValidatesInput) {
    EXPECT_THROW(Compactum(std::vector<Arc>{}), DomainError);
    EXPECT_THROW(Compactum({Arc{{}, false}}), DomainError);
}

TEST(Hausdorff, KnownValues) {
    const auto seg = build_named(NamedSet::segment);
    EXPECT_NEAR(hausdorff_distance(seg, seg), 0.0, 1e-12);
    const Compactum p0({Arc::point(0.0)}), p1({Arc::point(1.0)});
    EXPECT_NEAR(hausdorff_distance(p0, p1), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(Hausdorff, ShiftedSegmentAgainstBruteForce) {
    const double h = 0.01;
    const auto seg = build_named(NamedSet::segment);
    const Compactum shifted({Arc::segment(cplx(-1, h), cplx(1, h))});
    // brute force over dense samples of both segments
    const int N = 4001;
    std::vector<cplx> A, B;
    for (int i = 0; i < N; ++i) {
        const double x = -1.0 + 2.0 * i / (N - 1);
        A.emplace_back(x, 0.0);
        B.emplace_back(x, h);
    }
    double worst = 0.0;
    for (const auto& a : A) {
        double best = 1.0;
        for (const auto& b : B) best = std::min(best, chordal_distance(a, b));
        worst = std::max(worst, best);
    }
    for (const auto& b : B) {
        double best = 1.0;
        for (const auto& a : A) best = std::min(best, chordal_distance(a, b));
        worst = std::max(worst, best);
    }
    const double got = hausdorff_distance(seg, shifted);
    EXPECT_NEAR(got, worst, 2e-4);
    EXPECT_NEAR(got / h, 1.0, 0.02);
}

TEST(Maps, DiskProjection) {
    const auto T = MapSpec::disk_projection(1.0);
    EXPECT_NEAR(std::abs(T(cplx(2.0, 0.0)) - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_EQ(T(cplx(0.3, 0.4)), cplx(0.3, 0.4));
}

TEST(Maps, DiskProjectionIdempotentAndContracting) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N(0.0, 2.0);
    const auto T = MapSpec::disk_projection(1.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cplx> pts;
        for (int i = 0; i < 30; ++i) pts.emplace_back(N(rng), N(rng));
        double d0 = 0.0, d1 = 0.0;
        for (const auto& a : pts) {
            EXPECT_NEAR(std::abs(T(T(a)) - T(a)), 0.0, 1e-15);
            for (const auto& b : pts) {
                d0 = std::max(d0, std::abs(a - b));
                d1 = std::max(d1, std::abs(T(a) - T(b)));
            }
        }
        // Euclidean, not chordal: two far points close on the sphere can separate
        EXPECT_LE(d1, d0 + 1e-15);
    }
}

TEST(Maps, AnnulusProjectionPointwise) {
    const auto T = MapSpec::annulus_projection(1.0, 2.0);
    EXPECT_NEAR(std::abs(T(cplx(0.5, 0.0)) - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(T(cplx(3.0, 0.0)) - cplx(2.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(T(cplx(1.0, 1.0)) - cplx(1.0, 1.0)), 0.0, 1e-15);
    EXPECT_THROW(MapSpec::annulus_projection(2.0, 1.0), DomainError);
    EXPECT_THROW(MapSpec::scale(0.0), DomainError);
}

TEST(Maps, HalfplaneClampOnSegment) {
    const auto K = apply_map(build_named(NamedSet::segment), MapSpec::halfplane_clamp_upper(0.25));
    const Compactum expect({Arc::segment(cplx(-1, 0.25), cplx(1, 0.25))});
    EXPECT_LT(hausdorff_distance(K, expect), 1e-9);
    const auto lower = MapSpec::halfplane_clamp_lower(0.25);
    const auto upper = MapSpec::halfplane_clamp_upper(0.25);
    for (cplx z : {cplx(0.3, 0.1), cplx(-2.0, -1.0), cplx(0.0, 0.7)}) EXPECT_EQ(lower(z), std::conj(upper(std::conj(z))));
}

TEST(Maps, ClampImageStaysNearTrueImage) {
    // a diagonal crossing the clamp line: the image is a bent polyline
    const Compactum K({Arc::segment(cplx(-1, -1), cplx(1, 1))});
    const auto T = MapSpec::halfplane_clamp_upper(0.5);
    const auto img = apply_map(K, T);
    for (int i = 0; i <= 200; ++i) {
        const cplx z = cplx(-1, -1) + (i / 200.0) * cplx(2, 2);
        EXPECT_LT(detail::chordal_to_set(T(z), img), 1e-3);
    }
}

TEST(Maps, SplitClampConvergesMonotonically) {
    // K+ joins a1, a2 through the real axis; K- joins a3, a4 below it
    using S = BranchSquare;
    const Compactum K({Arc{{S::a1, cplx(-1.0 / 16, 0), cplx(1.0 / 16, 0), S::a2}, false},
                       Arc{{S::a3, cplx(0, -1.0 / 64), S::a4}, false}});
    double prev = 1.0;
    for (int j : {4, 8, 16, 32}) {
        const double d = hausdorff_distance(apply_split_clamp(K, 1.0 / j), K);
        EXPECT_LT(d, prev);
        // a vertical move by at most h changes chordal distance by at most 2h
        EXPECT_LE(d, 2.0 / j + 1e-9);
        prev = d;
    }
    EXPECT_THROW(apply_split_clamp(build_named(NamedSet::L), 0.25), DomainError);
}

TEST(NamedSets, LDiagonalsCrossAtCenter) {
    const auto L = build_named(NamedSet::L);
    ASSERT_EQ(L.components().size(), 2u);
    const auto& d1 = L.components()[0].vertices;
    const auto& d2 = L.components()[1].vertices;
    const auto x = segment_intersection(d1.front(), d1.back(), d2.front(), d2.back());
    ASSERT_TRUE(x.has_value());
    EXPECT_LT(std::abs(*x - cplx(0.0, 1.0 / 16.0)), 1e-14);
    // the centroid of the four branch points
    EXPECT_LT(std::abs((S::a1 + S::a2 + S::a3 + S::a4) / 4.0 - *x), 1e-14);
}

TEST(NamedSets, LRealAxisCrossings) {
    auto xs = real_axis_crossings(build_named(NamedSet::L));
    ASSERT_EQ(xs.size(), 2u);
    std::sort(xs.begin(), xs.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    // independent: solve Im(a + t (b - a)) = 0 on each diagonal
    auto cross = [](cplx a, cplx b) { return a + (-a.imag() / (b.imag() - a.imag())) * (b - a); };
    const cplx c1 = cross(S::a1, S::a4), c2 = cross(S::a2, S::a3);
    EXPECT_NEAR(xs[0].real(), std::min(c1.real(), c2.real()), 1e-15);
    EXPECT_NEAR(xs[1].real(), std::max(c1.real(), c2.real()), 1e-15);
    EXPECT_NEAR(xs[0].real(), -1.0 / 16.0, 1e-15);
    EXPECT_NEAR(xs[1].real(), 1.0 / 16.0, 1e-15);
}

TEST(NamedSets, KStarCircumscribingDisk) {
    const auto K = build_named(NamedSet::K_star);
    double r = 0.0;
    for (auto v : K.finite_vertices()) r = std::max(r, std::abs(v - cplx(0.0, 1.0 / 16.0)));
    EXPECT_NEAR(r, std::sqrt(2.0) / 8.0, 1e-15);
}

TEST(NamedSets, LpAndScaledInterval) {
    NamedSetParams p;
    p.p = 4;
    const auto Lp = build_named(NamedSet::L_p, p);
    for (auto v : Lp.finite_vertices()) EXPECT_GE(v.imag(), 1.0 / 16.0 - 1e-15);
    p.k = 64;
    const auto E = build_named(NamedSet::E_k, p);
    EXPECT_NEAR(E.diameter(), 128.0, 1e-12);
    p.k = 0;
    EXPECT_THROW(build_named(NamedSet::E_k, p), DomainError);
    p.k = 1;
    p.p = 9;
    EXPECT_THROW(build_named(NamedSet::L_p, p), DomainError);
}

TEST(Discretize, SmallCases) {
    auto c = discretize(build_named(NamedSet::segment), 3).positions();
    ASSERT_EQ(c.size(), 3u);
    EXPECT_NEAR(std::abs(c[0] - cplx(-1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[1]), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c[2] - cplx(1, 0)), 0.0, 1e-15);
    NamedSetParams p;
    p.a = 0.0;
    p.b = 1.0;
    c = discretize(build_named(NamedSet::segment, p), 2).positions();
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], cplx(0, 0));
    EXPECT_EQ(c[1], cplx(1, 0));
}

TEST(Discretize, LGetsFourPerDiagonal) {
    const auto cloud = discretize(build_named(NamedSet::L), 8);
    ASSERT_EQ(cloud.size(), 8u);
    std::size_t on0 = 0;
    for (const auto& p : cloud.points) on0 += p.component == 0;
    EXPECT_EQ(on0, 4u);
    for (cplx a : {S::a1, S::a2, S::a3, S::a4}) {
        double best = 1.0;
        for (const auto& p : cloud.points) best = std::min(best, std::abs(p.z - a));
        EXPECT_LT(best, 1e-15);
    }
}

TEST(Discretize, PointsDistinctAndOnParent) {
    const auto K = build_named(NamedSet::unit_circle);
    const auto cloud = discretize(K, 300);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        EXPECT_LT(detail::chordal_to_set(cloud.points[i].z, K), 1e-3);
        for (std::size_t j = i + 1; j < cloud.size(); ++j) EXPECT_NE(cloud.points[i].z, cloud.points[j].z);
    }
}

}  // namespace

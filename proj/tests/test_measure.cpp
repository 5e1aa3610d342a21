#include <gtest/gtest.h>

#include <random>

#include "capmin/measure.hpp"

using namespace capmin;

namespace {

TEST(DiscreteMeasureTest, Invariants) {
    EXPECT_THROW(DiscreteMeasure(std::vector<Atom>{}), DomainError);
    EXPECT_THROW(DiscreteMeasure({{cplx(0, 0), -0.5}, {cplx(1, 0), 1.5}}), DomainError);
    EXPECT_THROW(DiscreteMeasure({{cplx(0, 0), 0.5}}), DomainError);
    const DiscreteMeasure nonunit({{cplx(0, 0), 3.0}}, false);
    EXPECT_DOUBLE_EQ(nonunit.mass(), 3.0);
}

TEST(ZeroCounting, ExplicitRoots) {
    const auto nu = zero_counting(Polynomial({cplx(-1, 0), cplx(0, 0), cplx(1, 0)}));
    ASSERT_EQ(nu.atoms().size(), 2u);
    for (const auto& a : nu.atoms()) {
        EXPECT_NEAR(std::abs(std::abs(a.z.value().real()) - 1.0), 0.0, 1e-14);
        EXPECT_DOUBLE_EQ(a.w, 0.5);
    }
    const cplx I(0, 1);
    const auto tri = zero_counting(Polynomial::from_roots({I, I, I}));
    double mass_near_i = 0.0;
    for (const auto& a : tri.atoms())
        if (std::abs(a.z.value() - I) < 1e-4) mass_near_i += a.w;
    EXPECT_NEAR(mass_near_i, 1.0, 1e-12);
    EXPECT_THROW(zero_counting(Polynomial({cplx(2, 0)})), DomainError);
}

TEST(ZeroCounting, ChebyshevRootsNearArcsine) {
    std::vector<cplx> roots;
    for (int k = 0; k < 8; ++k) roots.emplace_back(std::cos((2 * k + 1) * std::numbers::pi / 16.0), 0.0);
    const auto nu = zero_counting(Polynomial::from_roots(roots));
    EXPECT_LT(weak_star_distance(nu, arcsine_measure(400)).value, 0.1);
}

TEST(ZeroCounting, ProductIsWeightedMixture) {
    const std::vector<cplx> r1{cplx(0.1, 0.2), cplx(-0.3, 0.0)}, r2{cplx(0.5, -0.5), cplx(0.0, 0.7), cplx(-0.2, -0.1)};
    std::vector<cplx> all = r1;
    all.insert(all.end(), r2.begin(), r2.end());
    const auto mix = zero_counting(all);
    const auto a = zero_counting(r1), b = zero_counting(r2);
    std::vector<Atom> atoms;
    for (auto x : a.atoms()) atoms.push_back({x.z, x.w * 2.0 / 5.0});
    for (auto x : b.atoms()) atoms.push_back({x.z, x.w * 3.0 / 5.0});
    EXPECT_NEAR(weak_star_distance(mix, DiscreteMeasure(atoms)).value, 0.0, 1e-15);
}

TEST(WeakStar, KnownValues) {
    const auto d0 = DiscreteMeasure::dirac(cplx(0, 0));
    const auto dh = DiscreteMeasure::dirac(cplx(0.5, 0));
    EXPECT_EQ(weak_star_distance(d0, d0).value, 0.0);
    // sum over m of 2^{-(2m-1)} (1/2)^m with m <= 16
    double oracle = 0.0;
    for (int m = 1; m <= 16; ++m) oracle += std::pow(2.0, -(2 * m - 1)) * std::pow(0.5, m);
    const auto r = weak_star_distance(dh, d0);
    EXPECT_NEAR(r.value, oracle, 1e-15);
    EXPECT_NEAR(r.value, 2.0 / 7.0, 1e-9);
    EXPECT_NEAR(r.truncation_bound, std::pow(2.0, -31), 0.0);
}

TEST(WeakStar, PseudometricOnRandomTriples) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-0.7, 0.7);
    auto random_measure = [&] {
        std::vector<cplx> pts;
        std::vector<double> w;
        for (int i = 0; i < 6; ++i) {
            pts.emplace_back(U(rng), U(rng));
            w.push_back(0.1 + std::abs(U(rng)));
        }
        return DiscreteMeasure::normalized(pts, w);
    };
    for (int t = 0; t < 200; ++t) {
        const auto a = random_measure(), b = random_measure(), c = random_measure();
        const double ab = weak_star_distance(a, b).value, bc = weak_star_distance(b, c).value, ac = weak_star_distance(a, c).value;
        EXPECT_NEAR(ab, weak_star_distance(b, a).value, 1e-15);
        EXPECT_LE(ac, ab + bc + 1e-15);
    }
}

TEST(WeakStar, CircleUniformConverges) {
    // every moment of the arc-length measure vanishes: compare with a fine discretization
    const auto limit = circle_uniform(4096, 1.0, 0.123);
    double prev = 1.0;
    for (std::size_t j : {2u, 4u, 8u, 16u, 32u}) {
        const double r = weak_star_distance(circle_uniform(j), limit).value;
        EXPECT_LT(r, prev);
        prev = r;
    }
    EXPECT_LT(prev, 1e-9);
}

TEST(WeakStar, RejectsUnboundedSupport) {
    EXPECT_THROW(weak_star_distance(DiscreteMeasure::dirac(cplx(2, 0)), DiscreteMeasure::dirac(cplx(0, 0))), DomainError);
    EXPECT_THROW(weak_star_distance(DiscreteMeasure::dirac(ComplexPoint::infinity()), DiscreteMeasure::dirac(cplx(0, 0))), DomainError);
    // rescaling into the unit disk by a declared radius
    EXPECT_NO_THROW(weak_star_distance(DiscreteMeasure::dirac(cplx(2, 0)), DiscreteMeasure::dirac(cplx(0, 0)), 4.0));
}

TEST(Pushforward, MovesAtomsKeepsMass) {
    const auto d = pushforward(DiscreteMeasure::dirac(cplx(2, 0)), MapSpec::disk_projection(1.0));
    EXPECT_NEAR(std::abs(d.atoms()[0].z.value() - cplx(1, 0)), 0.0, 1e-15);
    const std::vector<cplx> pts{cplx(0.1, 0), cplx(0, 0.2), cplx(-0.3, 0), cplx(0, -0.4)};
    const auto s = pushforward(DiscreteMeasure::uniform(pts), MapSpec::scale(2.0));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        EXPECT_EQ(s.atoms()[i].z.value(), 2.0 * pts[i]);
        EXPECT_DOUBLE_EQ(s.atoms()[i].w, 0.25);
    }
    const auto arc = arcsine_measure(400);
    const auto c = pushforward(arc, MapSpec::halfplane_clamp_upper(0.25));
    EXPECT_NEAR(c.mass(), arc.mass(), 1e-15);
    for (std::size_t i = 0; i < arc.atoms().size(); ++i) {
        EXPECT_EQ(c.atoms()[i].w, arc.atoms()[i].w);
        EXPECT_DOUBLE_EQ(c.atoms()[i].z.value().imag(), 0.25);
    }
}

TEST(QuantileNodes, SmallTables) {
    auto t = quantile_nodes(MeasurePreset::lebesgue, -1, 1, 1);
    ASSERT_EQ(t.nodes().size(), 3u);
    std::vector<double> x;
    for (const auto& z : t.nodes()) x.push_back(z.value().real());
    std::sort(x.begin(), x.end());
    EXPECT_NEAR(x[0], -2.0 / 3.0, 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
    EXPECT_NEAR(x[2], 2.0 / 3.0, 1e-15);

    t = quantile_nodes(MeasurePreset::chebyshev, -1, 1, 1);
    x.clear();
    for (const auto& z : t.nodes()) x.push_back(z.value().real());
    std::sort(x.begin(), x.end());
    EXPECT_NEAR(x[0], -std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(x[1], 0.0, 1e-15);
    EXPECT_NEAR(x[2], std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_THROW(quantile_nodes(MeasurePreset::chebyshev, 1, 1, 3), DomainError);
}

TEST(QuantileNodes, CountingMeasureNearPreset) {
    for (auto p : {MeasurePreset::chebyshev, MeasurePreset::lebesgue}) {
        const auto t = quantile_nodes(p, -1, 1, 20);
        EXPECT_EQ(t.nodes().size(), 41u);
        EXPECT_LT(weak_star_distance(t.counting_measure(), preset_measure(p, -1, 1, 2000)).value, 0.05);
    }
}

TEST(QuantileNodes, ArcsineQuantileFormula) {
    // independent: arcsine CDF F(x) = 1/2 + asin(x)/pi
    for (double p : {0.05, 0.3, 0.5, 0.81}) {
        const double x = preset_quantile(MeasurePreset::chebyshev, -1, 1, p);
        EXPECT_NEAR(0.5 + std::asin(x) / std::numbers::pi, p, 1e-14);
    }
}

TEST(InterpolationTableTest, InfinityNodes) {
    const auto t = InterpolationTable::at_infinity(4);
    EXPECT_EQ(t.nodes().size(), 9u);
    EXPECT_EQ(t.infinite_count(), 9u);
    EXPECT_THROW(InterpolationTable(2, std::vector<ComplexPoint>(4, cplx(0, 0))), DomainError);
}

TEST(RestrictToDisk, DropsFarAtoms) {
    const auto nu = DiscreteMeasure::uniform({cplx(0.1, 0), cplx(5, 0), cplx(0, 0.2), cplx(0, -9)});
    const auto r = restrict_to_disk(nu, 1.0);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->atoms().size(), 2u);
    EXPECT_NEAR(r->mass(), 1.0, 1e-15);
    EXPECT_FALSE(restrict_to_disk(DiscreteMeasure::dirac(cplx(3, 0)), 1.0).has_value());
}

}  // namespace

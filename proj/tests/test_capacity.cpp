#include <gtest/gtest.h>

#include <random>

#include "capmin/experiments.hpp"

using namespace capmin;

namespace {

const auto zero = ExternalField::zero();

TEST(Capacity, SegmentBothEstimators) {
    const auto K = build_named(NamedSet::segment);
    const auto e = energy_capacity(K, zero, 400);
    const auto f = fekete_capacity(K, zero, 32);
    EXPECT_NEAR(e.value, 0.5, 0.01);
    EXPECT_NEAR(f.value, 0.5, 0.01);
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(e.value, std::exp(-e.robin), 1e-12);
    EXPECT_EQ(f.n_or_m, 32u);
    ASSERT_TRUE(e.measure.has_value());
    EXPECT_LT(weak_star_distance(*e.measure, arcsine_measure(400)).value, 0.05);
}

TEST(Capacity, CircleBothEstimators) {
    const auto K = build_named(NamedSet::unit_circle);
    EXPECT_NEAR(energy_capacity(K, zero, 400).value, 1.0, 0.02);
    EXPECT_NEAR(fekete_capacity(K, zero, 32).value, 1.0, 0.02);
}

TEST(Capacity, SinglePointIsDegenerate) {
    const auto e = energy_capacity(Compactum({Arc::point(cplx(0.3, 0))}), zero, 400);
    EXPECT_TRUE(e.degenerate);
    EXPECT_EQ(e.value, 0.0);
}

TEST(Capacity, EstimatorAgreement) {
    for (auto s : {NamedSet::segment, NamedSet::unit_circle, NamedSet::K_star, NamedSet::L}) {
        const auto K = build_named(s);
        const double e = energy_capacity(K, zero, 400).value;
        const double f = fekete_capacity(K, zero, 32).value;
        EXPECT_LT(std::abs(std::log(f) - std::log(e)), 0.03) << K.label().value_or("?");
    }
}

TEST(Capacity, KStarBelowCircumscribedDisk) {
    const auto K = build_named(NamedSet::K_star);
    EXPECT_LE(fekete_capacity(K, zero, 32).value, std::sqrt(2.0) / 8.0);
    EXPECT_LE(energy_capacity(K, zero, 400).value, std::sqrt(2.0) / 8.0);
}

TEST(Capacity, WeightedEstimatorsAgreeOnKStar) {
    const auto K = build_named(NamedSet::K_star);
    const auto psi = ExternalField::preset_scaled(MeasurePreset::chebyshev, 64);
    const double e = energy_capacity(K, psi, 400).value;
    const double f = fekete_capacity(K, psi, 32).value;
    EXPECT_LT(std::abs(f - e) / e, 0.01);
}

TEST(Capacity, FeketeRawDiameterReported) {
    const auto f = fekete_capacity(build_named(NamedSet::segment), zero, 32);
    ASSERT_TRUE(f.transfinite_diameter.has_value());
    // the raw product of an n-point set exceeds the limit value at finite n
    EXPECT_GT(*f.transfinite_diameter, 0.5);
    EXPECT_THROW(fekete_capacity(build_named(NamedSet::segment), zero, 1), DomainError);
}

TEST(Capacity, FeketeDeterministic) {
    const auto K = build_named(NamedSet::L);
    const auto a = fekete_capacity(K, zero, 24), b = fekete_capacity(K, zero, 24);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.fekete_indices, b.fekete_indices);
}

TEST(Capacity, SplitClampConvergence) {
    using S = BranchSquare;
    const Compactum K({Arc{{S::a1, cplx(-1.0 / 16, 0), cplx(1.0 / 16, 0), S::a2}, false},
                       Arc{{S::a3, cplx(0, -1.0 / 64), S::a4}, false}});
    const double c = energy_capacity(K, zero, 400).value;
    double prev_err = 1.0;
    for (int j : {32, 64, 128}) {
        const double cj = energy_capacity(apply_split_clamp(K, 1.0 / j), zero, 400).value;
        const double err = std::abs(cj - c) / c;
        EXPECT_LT(err, prev_err);
        prev_err = err;
    }
    EXPECT_LT(prev_err, 0.02);
}

TEST(Capacity, FieldSandwich) {
    for (int k : {16, 64}) {
        const auto psi = ExternalField::preset_scaled(MeasurePreset::chebyshev, k);
        const double rho = std::exp(max_abs_on_disk(psi));
        for (auto s : {NamedSet::K_star, NamedSet::L}) {
            const auto K = build_named(s);
            const double c = energy_capacity(K, zero, 400).value, cp = energy_capacity(K, psi, 400).value;
            EXPECT_LE(c / (rho * rho), cp);
            EXPECT_LE(cp, c * rho * rho);
        }
    }
}

TEST(Capacity, Monotone) {
    NamedSetParams p;
    p.a = -0.5;
    p.b = 0.5;
    const double small = energy_capacity(build_named(NamedSet::segment, p), zero, 400).value;
    const double big = energy_capacity(build_named(NamedSet::segment), zero, 400).value;
    EXPECT_LT(small, big);
    const double lp = energy_capacity(build_named(NamedSet::L_p), zero, 400).value;
    EXPECT_LT(lp, energy_capacity(build_named(NamedSet::L), zero, 400).value);
}

TEST(Capacity, ConnectorsExceedQuarterDiameter) {
    std::mt19937_64 rng(42);
    const double bound = (1.0 - std::sqrt(13.0) / 16.0) / 4.0;
    EXPECT_GT(bound, 0.19);
    for (int i = 0; i < 5; ++i) {
        const auto K = random_connector(rng);
        const double c = energy_capacity(K, zero, 400).value;
        EXPECT_GE(c, K.diameter() / 4.0);
        EXPECT_GE(K.diameter() / 4.0, bound);
    }
}

TEST(Balayage, ArcsineAndSymmetry) {
    const auto K = build_named(NamedSet::segment);
    EXPECT_LT(weak_star_distance(balayage(DiscreteMeasure::dirac(ComplexPoint::infinity()), K, 400), arcsine_measure(400)).value, 0.05);
    const auto nu = balayage(DiscreteMeasure::uniform({cplx(0, 2), cplx(0, -2)}), K, 400);
    const auto refl = pushforward(nu, [](cplx z) { return std::conj(z); });
    EXPECT_LT(weak_star_distance(nu, refl).value, 1e-3);
}

TEST(Balayage, PotentialConstantOnK) {
    const auto K = build_named(NamedSet::segment);
    const auto mu = DiscreteMeasure::dirac(cplx(3, 0));
    const auto nu = balayage(mu, K, 400);
    // V^{delta_w - nu} at points of K, away from the endpoints
    double lo = 1e300, hi = -1e300;
    for (double x = -0.95; x <= 0.95; x += 0.01) {
        const cplx z(x, 1e-9);
        double v = log_potential(mu, z);
        for (const auto& a : nu.atoms()) v += a.w * std::log(std::abs(z - a.z.value()));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LT(hi - lo, 3e-2);
    EXPECT_THROW(balayage(DiscreteMeasure::dirac(cplx(0.5, 0)), K, 400), DomainError);
}

TEST(Equilibrium, CircleAndL) {
    const auto c = equilibrium_measure(build_named(NamedSet::unit_circle), 400);
    EXPECT_LT(weak_star_distance(c, circle_uniform(400)).value, 0.05);
    const auto nu = equilibrium_measure(build_named(NamedSet::L), 400);
    // the square of branch points is symmetric in the imaginary axis and in the line Im z = 1/16
    const auto refl = pushforward(nu, [](cplx z) { return -std::conj(z); });
    EXPECT_LT(weak_star_distance(nu, refl).value, 5e-3);
    const auto flip = pushforward(nu, [](cplx z) { return std::conj(z) + cplx(0, 1.0 / 8.0); });
    EXPECT_LT(weak_star_distance(nu, flip).value, 5e-3);
}

TEST(Simplex, MatchesClosedFormTwoPoint) {
    // minimize w^T A w + 2 f.w over the simplex with A = [[a, b], [b, a]]
    const std::vector<double> A{2.0, 0.5, 0.5, 3.0}, f{0.1, -0.2};
    const auto r = minimize_on_simplex(A, f);
    // stationarity: (A w + f)_0 = (A w + f)_1 with w_0 + w_1 = 1
    const double w0 = (A[3] - A[1] + f[1] - f[0]) / (A[0] - 2 * A[1] + A[3]);
    EXPECT_NEAR(r.w[0], w0, 1e-8);
    EXPECT_NEAR(r.w[1], 1 - w0, 1e-8);
}

}  // namespace

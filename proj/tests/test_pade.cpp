#include <gtest/gtest.h>

#include <random>

#include "capmin/pade.hpp"

using namespace capmin;

namespace {

double min_match(const std::vector<cplx>& got, cplx want) {
    double best = 1e300;
    for (auto z : got) best = std::min(best, std::abs(z - want));
    return best;
}

std::vector<cplx> geometric_coeffs(double a, std::size_t N) {
    // 1/(z - a) = sum_{m >= 1} a^{m-1} z^{-m}
    std::vector<cplx> c(N, cplx(0, 0));
    for (std::size_t m = 1; m < N; ++m) c[m] = std::pow(a, static_cast<double>(m - 1));
    return c;
}

TEST(ClassicalPade, RecoversSimplePole) {
    const auto R = classical_pade(geometric_coeffs(3.0, 3), 1);
    ASSERT_EQ(R.effective_poles.size(), 1u);
    EXPECT_LT(std::abs(R.effective_poles[0] - cplx(3, 0)), 1e-12);
    EXPECT_LT(R.residual, 1e-12);
    for (cplx z : {cplx(0.5, 1), cplx(-4, 0.1)}) EXPECT_LT(std::abs(R(z) - 1.0 / (z - 3.0)), 1e-12);
}

TEST(ClassicalPade, ReferencePolesOnSegment) {
    const auto R = classical_pade(BranchedFunction::reference_arcsine(), 6);
    ASSERT_EQ(R.effective_poles.size(), 6u);
    for (auto p : R.effective_poles) {
        EXPECT_LT(std::abs(p.imag()), 1e-8);
        EXPECT_LE(std::abs(p.real()), 1.0);
    }
    EXPECT_LT(weak_star_distance(zero_counting(R.effective_poles), arcsine_measure(400)).value, 0.15);
}

TEST(ClassicalPade, LaurentDefect) {
    for (const auto& f : {BranchedFunction::reference_arcsine(), BranchedFunction::fstar()}) {
        const std::size_t n = 8;
        const auto c = taylor_at_infinity(f, 2 * n + 4);
        const auto R = classical_pade(f, n);
        const auto& q = R.denominator.coefficients();
        double cn = 0.0;
        for (auto x : c) cn += std::norm(x);
        cn = std::sqrt(cn);
        // coefficient of z^{-j} in Q f, j = 1..n
        for (std::size_t j = 1; j <= n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * c[i + j];
            EXPECT_LT(std::abs(s), 1e-9 * cn) << f.name() << " j=" << j;
        }
    }
}

TEST(ClassicalPade, ScaleCovariance) {
    const auto f = BranchedFunction::fstar();
    const double k = 2.0;
    std::vector<cplx> scaled;
    for (auto a : f.branch_points()) scaled.push_back(a / k);
    const BranchedFunction g(scaled, f.twice_exponents(), f.leading(), "scaled");  // g(z) = f(k z)
    const auto Rf = classical_pade(f, 6), Rg = classical_pade(g, 6);
    ASSERT_EQ(Rf.effective_poles.size(), Rg.effective_poles.size());
    for (auto p : Rf.effective_poles) EXPECT_LT(min_match(Rg.effective_poles, p / k), 1e-8);
}

TEST(ClassicalPade, Errors) {
    EXPECT_THROW(classical_pade(std::vector<cplx>(5, cplx(0, 0)), 2), DomainError);
    EXPECT_THROW(classical_pade(geometric_coeffs(3.0, 3), 2), DomainError);
}

TEST(MultipointPade, RecoversSimplePole) {
    const auto f = BranchedFunction::rational({}, {cplx(3, 0)});
    const InterpolationTable t(1, {cplx(-1, 0), cplx(0.5, 0), cplx(2, 0)});
    const auto R = multipoint_pade(f, t, 1);
    ASSERT_EQ(R.effective_poles.size(), 1u);
    EXPECT_LT(std::abs(R.effective_poles[0] - cplx(3, 0)), 1e-12);
    EXPECT_LT(R.residual, 1e-12);
}

TEST(MultipointPade, RecoversRationalOfFullType) {
    const std::vector<cplx> zeros{cplx(0.3, 0.1), cplx(-0.5, 0), cplx(1.5, -1), cplx(0, 2)};
    const std::vector<cplx> poles{cplx(2, 1), cplx(-3, 0.5), cplx(0.1, -2.5), cplx(4, 0)};
    const auto f = BranchedFunction::rational(zeros, poles, 2.0);
    const auto R = multipoint_pade(f, quantile_nodes(MeasurePreset::chebyshev, -1, 1, 4), 4);
    EXPECT_LT(R.residual, 1e-10);
    for (auto p : poles) EXPECT_LT(min_match(R.effective_poles, p), 1e-8);
    auto exact = [&](cplx z) {
        cplx v = 2.0;
        for (auto a : zeros) v *= z - a;
        for (auto b : poles) v /= z - b;
        return v;
    };
    for (cplx z : {cplx(0.2, 0.7), cplx(5, -1), cplx(-1, -1)}) EXPECT_LT(std::abs(R(z) - exact(z)) / std::abs(exact(z)), 1e-10);
}

TEST(MultipointPade, InfinityTableMatchesClassical) {
    for (std::size_t n : {6u, 10u}) {
        const auto f = BranchedFunction::fstar();
        const auto A = classical_pade(f, n);
        const auto B = multipoint_pade(f, InterpolationTable::at_infinity(n), n);
        const auto& qa = A.denominator.coefficients();
        const auto& qb = B.denominator.coefficients();
        const auto& pa = A.numerator.coefficients();
        const auto& pb = B.numerator.coefficients();
        ASSERT_EQ(qa.size(), qb.size());
        for (std::size_t i = 0; i < qa.size(); ++i) EXPECT_LT(std::abs(qa[i] - qb[i]), 1e-10);
        for (std::size_t i = 0; i < pa.size(); ++i) EXPECT_LT(std::abs(pa[i] - pb[i]), 1e-10);
    }
}

TEST(MultipointPade, InterpolatesAtNodes) {
    const auto f = BranchedFunction::fstar();
    const std::size_t n = 6;
    const auto t = quantile_nodes(MeasurePreset::chebyshev, -4, 4, n);
    PadeOptions ext;
    ext.precision = Precision::extended;
    // node 0 sits next to a root of Q, which costs digits in binary64
    for (auto [opt, tol] : {std::pair{PadeOptions{}, 1e-7}, std::pair{ext, 1e-12}}) {
        const auto R = multipoint_pade(f, t, n, opt);
        for (const auto& e : t.nodes()) {
            const cplx z = e.value();
            const cplx fz = eval_continued(f, z, real_axis_path(f, z));
            EXPECT_LT(std::abs(R(z) - fz), tol * std::abs(fz)) << z;
        }
    }
}

TEST(MultipointPade, DefectAtPerturbedNodes) {
    // (fQ - P) has a simple zero at each node: halving the offset halves it
    const auto f = BranchedFunction::fstar();
    const std::size_t n = 5;
    const auto t = quantile_nodes(MeasurePreset::lebesgue, -2, 2, n);
    const auto R = multipoint_pade(f, t, n);
    for (const auto& e : t.nodes()) {
        auto defect = [&](double h) {
            const cplx z = e.value() + cplx(0, h);
            auto path = real_axis_path(f, e.value());
            path.push_back(z);
            return std::abs(eval_continued(f, z, path) * R.denominator(z) - R.numerator(z));
        };
        const double d1 = defect(1e-3), d2 = defect(5e-4);
        EXPECT_NEAR(d1 / d2, 2.0, 0.1) << e.value();
        EXPECT_LT(d1, 1e-2 * defect(0.3)) << e.value();
    }
}

TEST(MultipointPade, DegenerateCaseIsReported) {
    const auto f = BranchedFunction::rational({}, {cplx(3, 0)});
    const auto R = multipoint_pade(f, quantile_nodes(MeasurePreset::lebesgue, -1, 1, 3), 3);
    EXPECT_TRUE(R.degenerate);
    EXPECT_LT(R.effective_order, 3u);
    EXPECT_LT(min_match(R.effective_poles, cplx(3, 0)), 1e-6);
}

TEST(MultipointPade, Errors) {
    const auto f = BranchedFunction::fstar();
    EXPECT_THROW(multipoint_pade(f, InterpolationTable(1, {BranchSquare::a1, cplx(0, 0), cplx(1, 0)}), 1), DomainError);
    EXPECT_THROW(multipoint_pade(f, InterpolationTable::at_infinity(65), 65), DomainError);
}

TEST(Orthogonality, ClassicalDenominatorIsOrthogonal) {
    const auto f = BranchedFunction::fstar();
    const std::size_t n = 8;
    const auto R = classical_pade(f, n);
    const auto L = build_named(NamedSet::L);
    const auto res = orthogonality_residuals(R.denominator, Polynomial({cplx(1, 0)}), f, L, n - 2);
    EXPECT_LT(res.max_relative, 1e-6);
    EXPECT_GE(res.nodes, 2048u);
    // negative control
    std::mt19937_64 rng(8);
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<cplx> c;
    for (std::size_t i = 0; i <= n; ++i) c.emplace_back(N(rng), N(rng));
    const auto bad = orthogonality_residuals(Polynomial(c), Polynomial({cplx(1, 0)}), f, L, n - 2);
    EXPECT_GT(bad.max_relative, 1e-3);
}

}  // namespace

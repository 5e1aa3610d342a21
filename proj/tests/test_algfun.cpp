#include <gtest/gtest.h>

#include <random>

#include "capmin/algfun.hpp"

using namespace capmin;

namespace {

using S = BranchSquare;
const cplx I(0, 1);

cplx radicand(const BranchedFunction& f, cplx z) {
    cplx r = f.leading() * f.leading();
    for (std::size_t l = 0; l < f.branch_points().size(); ++l) r *= std::pow(z - f.branch_points()[l], f.twice_exponents()[l]);
    return r;
}

// f* near the circle |z| = 1, where every factor 1 - a/z stays close to 1
cplx fstar_outer(cplx z) {
    return std::sqrt((1.0 - S::a1 / z) * (1.0 - S::a2 / z) / ((1.0 - S::a3 / z) * (1.0 - S::a4 / z)));
}

TEST(Eval, NormalizationAtInfinity) {
    const auto f = BranchedFunction::fstar();
    const cplx v = eval_continued(f, cplx(1e6, 0), real_axis_path(f, cplx(1e6, 0)));
    EXPECT_LT(std::abs(v - 1.0), 1e-6);
}

TEST(Eval, FstarAtZeroAgainstIndependentTracking) {
    const auto f = BranchedFunction::fstar();
    const cplx v = eval_continued(f, cplx(0, 0), real_axis_path(f, cplx(0, 0)));
    EXPECT_NEAR(std::abs(v * v - 13.0 / 5.0), 0.0, 1e-13);
    // continuous square root along the real axis from x = 1e4 down to 0
    cplx w = std::sqrt(radicand(f, cplx(1e4, 0)));
    for (int i = 1; i <= 200000; ++i) {
        const double x = 1e4 * std::pow(1.0 - i / 200000.0, 3);
        cplx c = std::sqrt(radicand(f, cplx(x, 0)));
        if (std::abs(c - w) > std::abs(c + w)) c = -c;
        w = c;
    }
    EXPECT_LT(std::abs(v - w), 1e-12);
    EXPECT_NEAR(v.real(), -std::sqrt(13.0 / 5.0), 1e-13);
}

TEST(Eval, MonodromyAroundOneBranchPoint) {
    const auto f = BranchedFunction::fstar();
    const cplx start = S::a1 + 0.01;
    const cplx direct = eval_continued(f, start, {cplx(5, 0), cplx(5, 1), start});
    std::vector<cplx> loop{cplx(5, 0), cplx(5, 1), start};
    for (int k = 1; k <= 64; ++k) loop.push_back(S::a1 + 0.01 * std::polar(1.0, 2.0 * std::numbers::pi * k / 64.0));
    loop.back() = start;
    const cplx looped = eval_continued(f, start, loop);
    EXPECT_LT(std::abs(looped + direct), 1e-12);
}

TEST(Eval, SquareIdentity) {
    const auto f = BranchedFunction::fstar();
    const auto L = build_named(NamedSet::L);
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    for (int i = 0; i < 100; ++i) {
        const cplx z(U(rng), U(rng));
        if (detail::chordal_to_set(z, L) < 1e-3) continue;
        const cplx v = eval_continued(f, z, path_avoiding(f, L, z));
        const cplx r = radicand(f, z);
        EXPECT_LT(std::abs(v * v - r), 1e-12 * std::abs(r));
    }
}

TEST(Eval, HomotopicPathsAgree) {
    const auto f = BranchedFunction::fstar();
    const cplx z(0.5, 0.5);
    const cplx a = eval_continued(f, z, radial_path(f, z));
    const cplx b = eval_continued(f, z, real_axis_path(f, z));
    EXPECT_LT(std::abs(a - b), 1e-12);
}

TEST(Eval, RealAxisContinuity) {
    const auto f = BranchedFunction::fstar();
    const int N = 10000;
    const double k = 64.0;
    cplx prev = 0.0;
    double prev_bound = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double x = -k + 2.0 * k * i / N;
        const cplx v = eval_continued(f, cplx(x, 0), real_axis_path(f, cplx(x, 0)));
        // |f'| = |f| |1/2 sum e_l / (x - a_l)|
        cplx s = 0.0;
        for (std::size_t l = 0; l < 4; ++l) s += 0.5 * f.twice_exponents()[l] / (cplx(x, 0) - f.branch_points()[l]);
        const double bound = std::abs(v) * std::abs(s);
        if (i > 0) EXPECT_LE(std::abs(v - prev), 2.0 * (2.0 * k / N) * std::max(bound, prev_bound) + 1e-12) << x;
        prev = v;
        prev_bound = bound;
    }
}

TEST(Eval, MarginErrors) {
    const auto f = BranchedFunction::fstar();
    EXPECT_THROW(eval_continued(f, S::a1, radial_path(f, S::a1)), DomainError);
    // a path passing straight through a2
    EXPECT_THROW(eval_continued(f, cplx(0, 0), {S::a2 * 20.0, cplx(0, 0)}), DomainError);
}

TEST(Taylor, ReferenceBinomialSeries) {
    const auto c = taylor_at_infinity(BranchedFunction::reference_arcsine(), 21);
    for (std::size_t m = 0; m < 21; ++m) {
        double want = 0.0;
        if (m % 2 == 0) {
            const std::size_t j = m / 2;
            want = 1.0;
            for (std::size_t t = 1; t <= j; ++t) want *= (2.0 * t - 1.0) / (2.0 * t);
        }
        EXPECT_NEAR(std::abs(c[m] - want), 0.0, 1e-14) << m;
    }
    EXPECT_NEAR(c[2].real(), 0.5, 1e-15);
    EXPECT_NEAR(c[4].real(), 3.0 / 8.0, 1e-15);
}

TEST(Taylor, FstarLeadingCoefficientsByQuadrature) {
    const auto c = taylor_at_infinity(BranchedFunction::fstar(), 8);
    // c_m = (1 / 2 pi i) closed integral of f(z) z^{m-1} dz over |z| = 1
    const int N = 4096;
    for (int m = 0; m < 8; ++m) {
        cplx s = 0.0;
        for (int j = 0; j < N; ++j) {
            const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / N);
            s += fstar_outer(z) * std::pow(z, m);
        }
        s /= double(N);
        EXPECT_LT(std::abs(c[m] - s), 1e-13) << m;
    }
    EXPECT_LT(std::abs(c[0] - 1.0), 1e-15);
    // -(1/2)(a1 + a2 - a3 - a4)
    EXPECT_LT(std::abs(c[1] + 0.25 * I), 1e-15);
}

TEST(Taylor, FstarSymmetry) {
    const auto c = taylor_at_infinity(BranchedFunction::fstar(), 40);
    for (std::size_t m = 0; m < c.size(); ++m) {
        const double scale = std::max(1e-300, std::abs(c[m]));
        if (m % 2 == 1) EXPECT_LT(std::abs(c[m].real()) / scale, 1e-12) << m;
        else EXPECT_LT(std::abs(c[m].imag()) / scale, 1e-12) << m;
    }
}

TEST(Taylor, SeriesMatchesContinuation) {
    const auto f = BranchedFunction::fstar();
    const auto c = taylor_at_infinity(f, 40);
    for (int j = 0; j < 12; ++j) {
        const cplx z = std::polar(8.0, 0.3 + j * 0.5);
        cplx s = 0.0;
        for (std::size_t m = c.size(); m-- > 0;) s = s / z + c[m];
        EXPECT_LT(std::abs(s - eval_continued(f, z, radial_path(f, z))), 1e-10);
    }
}

TEST(Taylor, ExtendedPrecision) {
    const auto f = BranchedFunction::fstar();
    const auto c = taylor_at_infinity(f, 20);
    const auto ce = taylor_at_infinity<ext_real>(f, 20);
    for (std::size_t m = 0; m < 20; ++m) EXPECT_LT(std::abs(to_cplx(ce[m]) - c[m]), 1e-15 * std::max(1.0, std::abs(c[m])));
}

TEST(Admissibility, PaperSets) {
    const auto f = BranchedFunction::fstar();
    NamedSetParams p;
    p.k = 64;
    const auto E = build_named(NamedSet::E_k, p);
    EXPECT_TRUE(admissibility_check(build_named(NamedSet::K_star), f, E));
    EXPECT_FALSE(admissibility_check(build_named(NamedSet::L), f, E));
    EXPECT_FALSE(admissibility_check(Compactum({Arc::segment(S::a1, S::a2)}), f, E));
    const Compactum Einf({Arc::infinity()});
    EXPECT_TRUE(admissibility_check(build_named(NamedSet::L), f, Einf));
    EXPECT_TRUE(admissibility_check(build_named(NamedSet::vertical_pairing), f, Einf));
    EXPECT_FALSE(admissibility_check(Compactum({Arc::segment(S::a1, S::a3)}), f, Einf));
}

TEST(BranchedFunctionTest, Invariants) {
    EXPECT_THROW(BranchedFunction({cplx(0, 0)}, {1}), DomainError);
    EXPECT_THROW(BranchedFunction({cplx(0, 0), cplx(1, 0)}, {2, 2}), DomainError);
    EXPECT_THROW(BranchedFunction({cplx(0, 0), cplx(1, 0)}, {1, -1}, 0.0), DomainError);
    EXPECT_EQ(BranchedFunction::fstar().order_at_infinity(), 0);
    EXPECT_EQ(BranchedFunction::rational({}, {cplx(3, 0)}).order_at_infinity(), 1);
}

}  // namespace

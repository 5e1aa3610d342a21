#pragma once

// Dense complex polynomials (ascending coefficients) and a simultaneous
// root finder, generic over the working precision.

#include <algorithm>
#include <cmath>
#include <vector>

#include "capmin/numeric.hpp"

namespace capmin {

template <class Real>
class BasicPolynomial {
public:
    using complex_type = complex_of<Real>;

    BasicPolynomial() : c_{complex_type(Real(0))} {}
    explicit BasicPolynomial(std::vector<complex_type> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(complex_type(Real(0)));
    }

    static BasicPolynomial from_roots(const std::vector<complex_type>& roots) {
        std::vector<complex_type> c{complex_type(Real(1))};
        for (const auto& r : roots) {
            c.push_back(complex_type(Real(0)));
            for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
            c[0] = -r * c[0];
        }
        return BasicPolynomial(std::move(c));
    }

    const std::vector<complex_type>& coefficients() const { return c_; }
    std::vector<complex_type>& coefficients() { return c_; }
    std::size_t size() const { return c_.size(); }
    const complex_type& operator[](std::size_t k) const { return c_[k]; }

    /// Index of the last coefficient above the 1e-300 floor; -1 for zero.
    int degree() const {
        for (std::size_t k = c_.size(); k-- > 0;)
            if (abs(c_[k]) > Real(1e-300)) return static_cast<int>(k);
        return -1;
    }

    complex_type operator()(const complex_type& z) const {
        complex_type acc(Real(0));
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

    BasicPolynomial derivative() const {
        if (c_.size() <= 1) return BasicPolynomial();
        std::vector<complex_type> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Real(static_cast<double>(k));
        return BasicPolynomial(std::move(d));
    }

    /// Euclidean coefficient norm.
    Real norm2() const {
        Real s(0);
        for (const auto& a : c_) s += norm(a);
        return sqrt(s);
    }

    BasicPolynomial trimmed() const {
        const int d = degree();
        std::vector<complex_type> c(c_.begin(), c_.begin() + std::max(d, 0) + 1);
        return BasicPolynomial(std::move(c));
    }

    /// Coefficients of p(s z).
    BasicPolynomial rescaled(const Real& s) const {
        std::vector<complex_type> c = c_;
        Real f(1);
        for (auto& a : c) {
            a = a * f;
            f *= s;
        }
        return BasicPolynomial(std::move(c));
    }

    friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
        std::vector<complex_type> c(p.size() + q.size() - 1, complex_type(Real(0)));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) c[i + j] += p[i] * q[j];
        return BasicPolynomial(std::move(c));
    }

private:
    std::vector<complex_type> c_;
};

using Polynomial = BasicPolynomial<double>;

template <class Real>
Polynomial to_double_poly(const BasicPolynomial<Real>& p) {
    std::vector<cplx> c;
    for (const auto& a : p.coefficients()) c.push_back(to_cplx(a));
    return Polynomial(std::move(c));
}

template <class Real>
BasicPolynomial<Real> from_double_poly(const Polynomial& p) {
    std::vector<complex_of<Real>> c;
    for (const auto& a : p.coefficients()) c.push_back(from_cplx<Real>(a));
    return BasicPolynomial<Real>(std::move(c));
}

/// |p(z)| / sum_k |a_k| |z|^k.
template <class Real>
Real backward_error(const BasicPolynomial<Real>& p, const complex_of<Real>& z) {
    Real den(0);
    Real az = abs(z);
    Real pw(1);
    for (const auto& a : p.coefficients()) {
        den += abs(a) * pw;
        pw *= az;
    }
    if (den == Real(0)) return Real(0);
    return abs(p(z)) / den;
}

/// Largest backward error over a set of computed roots.
inline double backward_error(const Polynomial& p, const std::vector<cplx>& roots) {
    double worst = 0.0;
    for (const auto& z : roots) worst = std::max(worst, backward_error(p, z));
    return worst;
}

template <class Real>
struct RootResult {
    std::vector<complex_of<Real>> roots;
    Real max_backward_error = Real(0);
    int iterations = 0;
    bool converged = false;
};

namespace detail {

/// Starting points on circles given by the upper convex hull of
/// (k, log|a_k|), so that roots of very different moduli start near their
/// own scale.
template <class Real>
std::vector<complex_of<Real>> aberth_initial(const std::vector<complex_of<Real>>& a) {
    using C = complex_of<Real>;
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<int> idx;
    std::vector<double> lg;
    for (int k = 0; k <= n; ++k) {
        const double m = to_double(abs(a[static_cast<std::size_t>(k)]));
        if (m > 0.0) {
            idx.push_back(k);
            lg.push_back(to_double(log(abs(a[static_cast<std::size_t>(k)]))));
        }
    }
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (hull.size() >= 2) {
            const std::size_t o = hull[hull.size() - 2];
            const std::size_t p = hull.back();
            const double cross = (idx[p] - idx[o]) * (lg[i] - lg[o]) - (lg[p] - lg[o]) * (idx[i] - idx[o]);
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    std::vector<C> z;
    const double sigma = 0.7;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t h = 1; h < hull.size(); ++h) {
        const int i = idx[hull[h - 1]];
        const int j = idx[hull[h]];
        const int cnt = j - i;
        const double r = std::exp((lg[hull[h - 1]] - lg[hull[h]]) / cnt);
        for (int t = 0; t < cnt; ++t) {
            const double th = two_pi * t / cnt + two_pi * i / n + sigma;
            z.push_back(C(Real(r * std::cos(th)), Real(r * std::sin(th))));
        }
    }
    return z;
}

}  // namespace detail

/// All roots with multiplicity by Aberth-Ehrlich iteration followed by
/// Newton polishing.
template <class Real>
RootResult<Real> poly_roots(const BasicPolynomial<Real>& P, int max_iter = 2000) {
    using C = complex_of<Real>;
    const int d = P.degree();
    if (d < 1) throw DomainError("poly_roots: polynomial of degree < 1");
    if (d > 128) throw DomainError("poly_roots: degree above 128");

    std::vector<C> a(P.coefficients().begin(), P.coefficients().begin() + d + 1);
    RootResult<Real> res;
    // exact zeros at the origin
    std::size_t zeros = 0;
    while (zeros < a.size() - 1 && a[zeros] == C(Real(0))) ++zeros;
    for (std::size_t k = 0; k < zeros; ++k) res.roots.push_back(C(Real(0)));
    a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));
    const int n = static_cast<int>(a.size()) - 1;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    BasicPolynomial<Real> p(a);
    BasicPolynomial<Real> dp = p.derivative();

    std::vector<C> z = detail::aberth_initial<Real>(a);
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    const Real tol = epsilon_v<Real>() * Real(16);
    int it = 0;
    for (; it < max_iter; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (done[ui]) continue;
            const C pv = p(z[ui]);
            if (pv == C(Real(0))) {
                done[ui] = true;
                continue;
            }
            const C ratio = pv / dp(z[ui]);
            C sum(Real(0));
            for (int j = 0; j < n; ++j)
                if (j != i) sum += C(Real(1)) / (z[ui] - z[static_cast<std::size_t>(j)]);
            const C w = ratio / (C(Real(1)) - ratio * sum);
            z[ui] -= w;
            if (abs(w) <= tol * abs(z[ui]) || abs(w) == Real(0)) done[ui] = true;
            else all = false;
        }
        if (all) break;
    }
    res.iterations = it;
    res.converged = it < max_iter;

    // Newton polishing; a step is kept only if it lowers |p|.
    for (auto& r : z) {
        for (int k = 0; k < 3; ++k) {
            const C pv = p(r);
            const C dv = dp(r);
            if (dv == C(Real(0))) break;
            const C cand = r - pv / dv;
            if (abs(p(cand)) < abs(pv)) r = cand;
            else break;
        }
    }
    for (const auto& r : z) {
        res.max_backward_error = std::max(res.max_backward_error, backward_error(p, r));
        res.roots.push_back(r);
    }
    std::sort(res.roots.begin(), res.roots.end(), [](const C& x, const C& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return res;
}

}  // namespace capmin

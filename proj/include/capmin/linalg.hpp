#pragma once

// Small dense complex linear algebra: a one-sided Jacobi SVD used to pick
// null vectors of the Pade systems.

#include <algorithm>
#include <numeric>
#include <vector>

#include "capmin/numeric.hpp"

namespace capmin {

template <class C>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, C fill = C()) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    C& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<C> a_;
};

template <class Real>
struct SvdResult {
    std::vector<Real> singular_values;              // descending
    Matrix<complex_of<Real>> V;                     // columns ordered like singular_values
    int sweeps = 0;
};

/// One-sided (Hestenes) Jacobi SVD of a rows x cols matrix. Wide matrices
/// are padded with zero rows, so all cols right singular vectors come back.
template <class Real>
SvdResult<Real> jacobi_svd(const Matrix<complex_of<Real>>& A, int max_sweeps = 80) {
    using C = complex_of<Real>;
    const std::size_t n = A.cols();
    const std::size_t m = std::max(A.rows(), n);
    Matrix<C> U(m, n, C(Real(0)));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) U(i, j) = A(i, j);
    Matrix<C> V(n, n, C(Real(0)));
    for (std::size_t j = 0; j < n; ++j) V(j, j) = C(Real(1));

    const Real tol = epsilon_v<Real>();
    SvdResult<Real> out;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Real alpha(0), beta(0);
                C gamma(Real(0));
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += norm(U(i, p));
                    beta += norm(U(i, q));
                    gamma += conj(U(i, p)) * U(i, q);
                }
                const Real g = abs(gamma);
                if (g == Real(0) || g <= tol * sqrt(alpha * beta)) continue;
                rotated = true;
                const C phase = conj(gamma) / g;  // e^{-i phi}
                const Real zeta = (beta - alpha) / (Real(2) * g);
                const Real sgn = zeta >= Real(0) ? Real(1) : Real(-1);
                const Real t = sgn / (abs(zeta) + sqrt(Real(1) + zeta * zeta));
                const Real c = Real(1) / sqrt(Real(1) + t * t);
                const Real s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const C up = U(i, p);
                    const C uq = U(i, q) * phase;
                    U(i, p) = up * c - uq * s;
                    U(i, q) = up * s + uq * c;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const C vp = V(i, p);
                    const C vq = V(i, q) * phase;
                    V(i, p) = vp * c - vq * s;
                    V(i, q) = vp * s + vq * c;
                }
            }
        }
        out.sweeps = sweep + 1;
        if (!rotated) break;
    }

    std::vector<Real> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        Real s(0);
        for (std::size_t i = 0; i < m; ++i) s += norm(U(i, j));
        sv[j] = sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sv[x] > sv[y]; });
    out.V = Matrix<C>(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.singular_values.push_back(sv[order[k]]);
        for (std::size_t i = 0; i < n; ++i) out.V(i, k) = V(i, order[k]);
    }
    return out;
}

}  // namespace capmin

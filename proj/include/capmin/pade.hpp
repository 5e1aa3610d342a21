#pragma once

// Classical diagonal and multipoint Pade approximants. Denominators are
// null vectors of Hankel / divided-difference systems taken from a Jacobi
// SVD, in a rescaled variable u = z / s and in a selectable precision.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "capmin/algfun.hpp"
#include "capmin/linalg.hpp"
#include "capmin/measure.hpp"
#include "capmin/polynomial.hpp"

namespace capmin {

struct PadeApproximant {
    Polynomial numerator;    // in z, scaled so that the denominator has unit coefficient norm
    Polynomial denominator;
    Polynomial numerator_u;  // same rational function in u = z / scale
    Polynomial denominator_u;
    double scale = 1.0;
    std::size_t order = 0;
    Precision precision = Precision::binary64;

    double residual = 0.0;          // relative defect of the linear conditions
    double sigma_min = 0.0;         // smallest and second smallest singular values
    double sigma_next = 0.0;
    double sigma_max = 0.0;
    bool rank_deficient = false;
    bool degenerate = false;        // rank deficiency or cancelled pole-zero pairs
    double root_backward_error = 0.0;

    std::vector<cplx> poles;            // all roots of the denominator
    std::vector<cplx> zeros;            // all roots of the numerator
    std::vector<cplx> common_roots;     // poles cancelled by a numerator root
    std::vector<cplx> effective_poles;  // poles minus cancelled ones
    std::size_t effective_order = 0;

    cplx operator()(cplx z) const {
        const cplx u = z / scale;
        return numerator_u(u) / denominator_u(u);
    }
};

struct PadeOptions {
    Precision precision = Precision::binary64;
    double common_root_tolerance = 1e-7;  // relative to max(1, |z|)
    /// Continuation path from infinity to a finite node; defaults to the
    /// real axis for real nodes and a radial path otherwise.
    std::function<std::vector<cplx>(const BranchedFunction&, cplx)> path;
};

inline std::vector<cplx> default_node_path(const BranchedFunction& f, cplx z) {
    return z.imag() == 0.0 ? real_axis_path(f, z) : radial_path(f, z);
}

namespace detail {

template <class Real>
struct NullVector {
    std::vector<complex_of<Real>> v;
    Real smin{0}, snext{0}, smax{0};
};

/// Right singular vector of the smallest singular value, after scaling each
/// row to unit norm.
template <class Real>
NullVector<Real> null_vector(Matrix<complex_of<Real>> M) {
    using C = complex_of<Real>;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Real s(0);
        for (std::size_t j = 0; j < M.cols(); ++j) s += norm(M(i, j));
        s = sqrt(s);
        if (s > Real(0))
            for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = M(i, j) / s;
    }
    const auto svd = jacobi_svd<Real>(M);
    const std::size_t n = M.cols();
    NullVector<Real> out;
    out.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.v[i] = svd.V(i, n - 1);
    out.smin = svd.singular_values[n - 1];
    out.snext = n >= 2 ? svd.singular_values[n - 2] : svd.singular_values[n - 1];
    out.smax = svd.singular_values[0];
    return out;
}

/// max_i |row_i . x| / sum_j |row_ij x_j|.
template <class Real>
double relative_defect(const Matrix<complex_of<Real>>& M, const std::vector<complex_of<Real>>& x) {
    using C = complex_of<Real>;
    double worst = 0.0;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        C s(Real(0));
        Real a(0);
        for (std::size_t j = 0; j < M.cols(); ++j) {
            s += M(i, j) * x[j];
            a += abs(M(i, j) * x[j]);
        }
        if (a > Real(0)) worst = std::max(worst, to_double(abs(s) / a));
    }
    return worst;
}

template <class Real>
std::vector<complex_of<Real>> roots_of(const std::vector<complex_of<Real>>& c, double* backward) {
    BasicPolynomial<Real> p(c);
    if (p.degree() < 1) return {};
    auto r = poly_roots(p.trimmed());
    if (backward) *backward = std::max(*backward, to_double(r.max_backward_error));
    return r.roots;
}

/// Assembles the public result from denominator / numerator coefficients in
/// u = z / s.
template <class Real>
PadeApproximant finish(std::vector<complex_of<Real>> q, std::vector<complex_of<Real>> p, const Real& s, std::size_t n,
                       const NullVector<Real>& nv, double residual, const PadeOptions& opt) {
    using C = complex_of<Real>;
    PadeApproximant R;
    R.order = n;
    R.scale = to_double(s);
    R.precision = scalar_traits<Real>::precision;
    R.residual = residual;
    R.sigma_min = to_double(nv.smin);
    R.sigma_next = to_double(nv.snext);
    R.sigma_max = to_double(nv.smax);
    const Real floor_sv = std::max(nv.smin, epsilon_v<Real>() * nv.smax);
    R.rank_deficient = n > 0 && nv.snext < Real(100) * floor_sv;

    // roots in u, mapped back to z
    double bwd = 0.0;
    for (const auto& r : roots_of<Real>(q, &bwd)) R.poles.push_back(to_cplx(r * s));
    for (const auto& r : roots_of<Real>(p, &bwd)) R.zeros.push_back(to_cplx(r * s));
    R.root_backward_error = bwd;

    std::vector<char> used(R.zeros.size(), 0);
    for (const auto& z : R.poles) {
        std::size_t best = R.zeros.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < R.zeros.size(); ++k) {
            if (used[k]) continue;
            const double d = std::abs(R.zeros[k] - z);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        if (best < R.zeros.size() && bd <= opt.common_root_tolerance * std::max(1.0, std::abs(z))) {
            used[best] = 1;
            R.common_roots.push_back(z);
        } else {
            R.effective_poles.push_back(z);
        }
    }
    R.effective_order = n - std::min(n, R.common_roots.size());
    R.degenerate = R.rank_deficient || !R.common_roots.empty();

    // z coefficients, denominator of unit norm with its largest coefficient real positive
    std::vector<C> qz(q.size()), pz(p.size());
    Real pw(1);
    for (std::size_t j = 0; j < q.size(); ++j) {
        qz[j] = q[j] / pw;
        if (j < p.size()) pz[j] = p[j] / pw;
        pw *= s;
    }
    Real nq(0);
    std::size_t big = 0;
    for (std::size_t j = 0; j < qz.size(); ++j) {
        nq += norm(qz[j]);
        if (abs(qz[j]) > abs(qz[big])) big = j;
    }
    nq = sqrt(nq);
    const C phase = conj(qz[big]) / abs(qz[big]);
    std::vector<cplx> qd, pd, qu, pu;
    for (auto& c : qz) qd.push_back(to_cplx(c * phase / nq));
    for (auto& c : pz) pd.push_back(to_cplx(c * phase / nq));
    Real nu(0);
    for (auto& c : q) nu += norm(c);
    nu = sqrt(nu);
    for (auto& c : q) qu.push_back(to_cplx(c * phase / nu));
    for (auto& c : p) pu.push_back(to_cplx(c * phase / nu));
    R.denominator = Polynomial(qd);
    R.numerator = Polynomial(pd);
    R.denominator_u = Polynomial(qu);
    R.numerator_u = Polynomial(pu);
    return R;
}

/// Scale from the growth of Laurent coefficients, max_m |c_m|^{1/m}.
template <class Real>
Real coefficient_scale(const std::vector<complex_of<Real>>& c, std::size_t upto) {
    Real s(0);
    for (std::size_t m = 1; m <= upto && m < c.size(); ++m) {
        const Real a = abs(c[m]);
        if (a > Real(0)) s = std::max(s, Real(exp(log(a) / Real(static_cast<double>(m)))));
    }
    return s > Real(0) ? s : Real(1);
}

template <class Real>
PadeApproximant classical_impl(const std::vector<complex_of<Real>>& c, std::size_t n, const PadeOptions& opt) {
    using C = complex_of<Real>;
    if (c.size() < 2 * n + 1) throw DomainError("classical_pade: need 2n+1 Laurent coefficients");
    if (std::all_of(c.begin(), c.end(), [](const C& x) { return x == C(Real(0)); }))
        throw DomainError("classical_pade: all coefficients vanish");
    const Real s = coefficient_scale<Real>(c, 2 * n);
    std::vector<C> ct(2 * n + 1);
    Real pw(1);
    for (std::size_t m = 0; m <= 2 * n; ++m) {
        ct[m] = c[m] / pw;
        pw *= s;
    }
    std::vector<C> q(n + 1, C(Real(0)));
    NullVector<Real> nv;
    double residual = 0.0;
    if (n == 0) {
        q[0] = C(Real(1));
        nv.smin = nv.snext = nv.smax = Real(1);
    } else {
        Matrix<C> M(n, n + 1);
        for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t j = 0; j <= n; ++j) M(r - 1, j) = ct[j + r];
        nv = null_vector<Real>(M);
        q = nv.v;
        residual = relative_defect<Real>(M, q);
    }
    std::vector<C> p(n + 1, C(Real(0)));
    for (std::size_t d = 0; d <= n; ++d)
        for (std::size_t j = d; j <= n; ++j) p[d] += q[j] * ct[j - d];
    return finish<Real>(q, p, s, n, nv, residual, opt);
}

/// Distinct nodes in Leja order (largest modulus first, then greedy
/// product of distances), each repeated by its multiplicity.
inline std::vector<std::pair<cplx, std::size_t>> leja_groups(const std::vector<cplx>& nodes) {
    std::vector<std::pair<cplx, std::size_t>> groups;
    for (const auto& z : nodes) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == z; });
        if (it == groups.end()) groups.push_back({z, 1});
        else ++it->second;
    }
    std::vector<std::pair<cplx, std::size_t>> out;
    std::vector<char> taken(groups.size(), 0);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        std::size_t best = groups.size();
        double score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (taken[i]) continue;
            double sc = 0.0;
            if (out.empty()) sc = std::abs(groups[i].first);
            else
                for (const auto& g : out) sc += std::log(std::abs(groups[i].first - g.first));
            if (sc > score) {
                score = sc;
                best = i;
            }
        }
        taken[best] = 1;
        out.push_back(groups[best]);
    }
    return out;
}

/// Taylor coefficients (orders 0..mu-1) in u of f(u) * u^j at u0, given
/// those of f.
template <class Real>
std::vector<complex_of<Real>> times_power(const std::vector<complex_of<Real>>& ft, const complex_of<Real>& u0, std::size_t j) {
    using C = complex_of<Real>;
    const std::size_t mu = ft.size();
    std::vector<C> pt(mu, C(Real(0)));  // Taylor of u^j at u0
    for (std::size_t r = 0; r < mu && r <= j; ++r) {
        Real binom(1);
        for (std::size_t t = 0; t < r; ++t) binom = binom * Real(static_cast<double>(j - t)) / Real(static_cast<double>(t + 1));
        C pw(Real(1));
        for (std::size_t t = 0; t < j - r; ++t) pw *= u0;
        pt[r] = pw * binom;
    }
    std::vector<C> out(mu, C(Real(0)));
    for (std::size_t a = 0; a < mu; ++a)
        for (std::size_t b = 0; a + b < mu; ++b) out[a + b] += ft[a] * pt[b];
    return out;
}

/// Top row of the Hermite divided-difference table. x lists the nodes with
/// repeats adjacent; taylor(i, r) returns the r-th Taylor coefficient at x[i].
template <class Real, class T>
std::vector<complex_of<Real>> hermite_top_row(const std::vector<complex_of<Real>>& x, T&& taylor) {
    using C = complex_of<Real>;
    const std::size_t N = x.size();
    std::vector<C> arr(N), top(N);
    for (std::size_t i = 0; i < N; ++i) arr[i] = taylor(i, 0);
    top[0] = arr[0];
    for (std::size_t lev = 1; lev < N; ++lev) {
        for (std::size_t i = N - 1; i >= lev; --i) {
            if (x[i] == x[i - lev]) arr[i] = taylor(i, lev);
            else arr[i] = (arr[i] - arr[i - 1]) / (x[i] - x[i - lev]);
            if (i == lev) break;
        }
        top[lev] = arr[lev];
    }
    return top;
}

/// Monomial coefficients of the Newton form sum c_k prod_{i<k} (u - x_i).
template <class Real>
std::vector<complex_of<Real>> newton_to_monomial(const std::vector<complex_of<Real>>& c, const std::vector<complex_of<Real>>& x) {
    using C = complex_of<Real>;
    const std::size_t n = c.size();
    std::vector<C> out(n, C(Real(0)));
    // Horner in Newton form: P = c0 + (u - x0)(c1 + (u - x1)(c2 + ...))
    for (std::size_t k = n; k-- > 0;) {
        // out <- out * (u - x_k) + c_k
        std::vector<C> nx(n, C(Real(0)));
        for (std::size_t d = 0; d + 1 < n; ++d) {
            nx[d + 1] += out[d];
            nx[d] -= out[d] * x[k];
        }
        nx[0] += c[k];
        out = std::move(nx);
    }
    return out;
}

template <class Real>
PadeApproximant multipoint_impl(const BranchedFunction& f, const InterpolationTable& table, const PadeOptions& opt) {
    using C = complex_of<Real>;
    const std::size_t n = table.order();
    const std::size_t N = 2 * n + 1;
    std::vector<cplx> finite;
    for (const auto& z : table.nodes())
        if (z.is_finite()) finite.push_back(z.value());
    const std::size_t r_inf = N - finite.size();

    for (const auto& z : finite)
        for (std::size_t l = 0; l < f.branch_points().size(); ++l)
            if (f.singular_at(l) && std::abs(z - f.branch_points()[l]) < branch_margin)
                throw DomainError("multipoint_pade: node at a singular point of f");

    const auto groups = leja_groups(finite);
    auto path_for = opt.path ? opt.path : default_node_path;

    // Taylor data of f at each distinct node in z
    std::vector<C> gz;
    std::vector<std::vector<C>> ftz;
    for (const auto& [z, mu] : groups) {
        const C zr = from_cplx<Real>(z);
        const C v = eval_continued<Real>(f, zr, path_for(f, z));
        gz.push_back(zr);
        ftz.push_back(taylor_at_point<Real>(f, zr, v, mu));
    }

    Real s(0);
    for (const auto& z : finite) s = std::max(s, Real(std::abs(z)));
    std::vector<C> laurent;
    if (r_inf > 0) {
        laurent = taylor_at_infinity<Real>(f, N);
        s = std::max(s, coefficient_scale<Real>(laurent, N - 1));
    }
    if (s == Real(0)) s = Real(1);

    // Taylor coefficients of f in u at each group: t_r s^r
    std::vector<std::vector<C>> ftu = ftz;
    for (auto& t : ftu) {
        Real pw(1);
        for (auto& c : t) {
            c = c * pw;
            pw *= s;
        }
    }
    std::vector<C> gu;
    for (const auto& z : gz) gu.push_back(z / s);

    if (r_inf == 0) {
        // expanded node list with repeats adjacent
        std::vector<C> x;
        std::vector<std::size_t> gid, rep;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t k = 0; k < groups[g].second; ++k) {
                x.push_back(gu[g]);
                gid.push_back(g);
                rep.push_back(k);
            }
        std::vector<std::vector<std::vector<C>>> gt(n + 1);  // gt[j][group] Taylor of f u^j
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t g = 0; g < groups.size(); ++g) gt[j].push_back(times_power<Real>(ftu[g], gu[g], j));
        Matrix<C> M(n, n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            const auto top = hermite_top_row<Real>(x, [&](std::size_t i, std::size_t r) { return gt[j][gid[i]][r]; });
            for (std::size_t k = n + 1; k <= 2 * n; ++k) M(k - n - 1, j) = top[k];
        }
        NullVector<Real> nv;
        std::vector<C> q(n + 1, C(Real(0)));
        double residual = 0.0;
        if (n == 0) {
            q[0] = C(Real(1));
            nv.smin = nv.snext = nv.smax = Real(1);
        } else {
            nv = null_vector<Real>(M);
            q = nv.v;
            residual = relative_defect<Real>(M, q);
        }
        // numerator: Newton interpolant of f Q on the first n+1 nodes
        std::vector<std::vector<C>> ht(groups.size());
        for (std::size_t g = 0; g < groups.size(); ++g) {
            ht[g].assign(groups[g].second, C(Real(0)));
            for (std::size_t j = 0; j <= n; ++j)
                for (std::size_t r = 0; r < groups[g].second; ++r) ht[g][r] += q[j] * gt[j][g][r];
        }
        std::vector<C> xp(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n + 1));
        const auto newton = hermite_top_row<Real>(xp, [&](std::size_t i, std::size_t r) { return ht[gid[i]][r]; });
        const auto p = newton_to_monomial<Real>(newton, xp);
        return finish<Real>(q, p, s, n, nv, residual, opt);
    }

    // Joint system in (q, p) when infinity is a node.
    std::vector<C> ct(N);
    {
        Real pw(1);
        for (std::size_t m = 0; m < N; ++m) {
            ct[m] = laurent[m] / pw;
            pw *= s;
        }
    }
    Matrix<C> M(N, 2 * n + 2, C(Real(0)));
    std::size_t row = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::size_t mu = groups[g].second;
        for (std::size_t j = 0; j <= n; ++j) {
            const auto t = times_power<Real>(ftu[g], gu[g], j);
            for (std::size_t r = 0; r < mu; ++r) M(row + r, j) = t[r];
        }
        for (std::size_t d = 0; d <= n; ++d) {
            // Taylor of u^d at u0 is times_power applied to the constant 1
            std::vector<C> one(mu, C(Real(0)));
            one[0] = C(Real(1));
            const auto t = times_power<Real>(one, gu[g], d);
            for (std::size_t r = 0; r < mu; ++r) M(row + r, n + 1 + d) = -t[r];
        }
        row += mu;
    }
    for (std::size_t t = 0; t < r_inf; ++t, ++row) {
        // coefficient of u^{n - t} in f Q - P
        for (std::size_t j = 0; j <= n; ++j) {
            const long m = static_cast<long>(j) - static_cast<long>(n) + static_cast<long>(t);
            if (m >= 0 && static_cast<std::size_t>(m) < N) M(row, j) = ct[static_cast<std::size_t>(m)];
        }
        if (t <= n) M(row, n + 1 + (n - t)) = C(Real(-1));
    }
    const auto nv = null_vector<Real>(M);
    const double residual = relative_defect<Real>(M, nv.v);
    std::vector<C> q(nv.v.begin(), nv.v.begin() + static_cast<std::ptrdiff_t>(n + 1));
    std::vector<C> p(nv.v.begin() + static_cast<std::ptrdiff_t>(n + 1), nv.v.end());
    return finish<Real>(q, p, s, n, nv, residual, opt);
}

}  // namespace detail

/// Diagonal Pade approximant at infinity from Laurent coefficients
/// f(z) = c_0 + c_1/z + ... (at least 2n+1 of them).
inline PadeApproximant classical_pade(const std::vector<cplx>& coeffs, std::size_t n, const PadeOptions& opt = {}) {
    if (opt.precision == Precision::extended) {
        std::vector<ext_complex> c;
        for (auto x : coeffs) c.push_back(from_cplx<ext_real>(x));
        return detail::classical_impl<ext_real>(c, n, opt);
    }
    return detail::classical_impl<double>(coeffs, n, opt);
}

/// Same, with the coefficients generated in the working precision.
inline PadeApproximant classical_pade(const BranchedFunction& f, std::size_t n, const PadeOptions& opt = {}) {
    if (opt.precision == Precision::extended)
        return detail::classical_impl<ext_real>(taylor_at_infinity<ext_real>(f, 2 * n + 1), n, opt);
    return detail::classical_impl<double>(taylor_at_infinity<double>(f, 2 * n + 1), n, opt);
}

/// Rational interpolant of type (n, n) at the 2n+1 table nodes (with
/// multiplicity; infinity allowed).
inline PadeApproximant multipoint_pade(const BranchedFunction& f, const InterpolationTable& table, std::size_t n,
                                       const PadeOptions& opt = {}) {
    if (table.order() != n) throw DomainError("multipoint_pade: table order differs from n");
    if (n > 64) throw DomainError("multipoint_pade: n above 64");
    if (opt.precision == Precision::extended) return detail::multipoint_impl<ext_real>(f, table, opt);
    return detail::multipoint_impl<double>(f, table, opt);
}

/// Roots of a double-precision polynomial, optionally refined in extended
/// precision.
inline std::vector<cplx> poly_roots(const Polynomial& Q, Precision precision) {
    for (const auto& c : Q.coefficients())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("poly_roots: non-finite coefficient");
    std::vector<cplx> out;
    bool converged = false;
    if (precision == Precision::extended) {
        const auto r = poly_roots(from_double_poly<ext_real>(Q));
        for (const auto& z : r.roots) out.push_back(to_cplx(z));
        converged = r.converged;
    } else {
        auto r = poly_roots(Q);
        out = std::move(r.roots);
        converged = r.converged;
    }
    for (auto z : out)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NumericalError("poly_roots: non-finite root");
    if (!converged && backward_error(Q, out) > 1e-10) throw NumericalError("poly_roots: iteration did not converge");
    return out;
}

// ---------------------------------------------------------------------------
// Orthogonality along a contour around a cut

struct OrthogonalityResult {
    std::vector<cplx> residuals;  // contour integrals for nu = 0..nu_max
    std::vector<double> scales;   // integrals of the absolute integrand
    double max_relative = 0.0;
    std::size_t nodes = 0;
    double margin = 0.0;
};

/// Integrals of Q(t) Psi(t) f_L(t) t^nu over the rectangle enclosing L at
/// the given margin, Psi = 1/omega (omega = 1 when empty), f_L the branch of
/// f off L. Composite 30-point Gauss-Legendre panels on each side.
inline OrthogonalityResult orthogonality_residuals(const Polynomial& Q, const Polynomial& omega, const BranchedFunction& f,
                                                   const Compactum& L, std::size_t nu_max, double margin = 0.1,
                                                   std::size_t min_nodes = 2048) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (auto z : L.finite_vertices()) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    xmin -= margin;
    xmax += margin;
    ymin -= margin;
    ymax += margin;
    const std::array<cplx, 5> corner{cplx(xmin, ymin), cplx(xmax, ymin), cplx(xmax, ymax), cplx(xmin, ymax), cplx(xmin, ymin)};
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t l = 0; l < f.branch_points().size(); ++l)
            if (f.singular_at(l) && detail::point_segment_distance(f.branch_points()[l], corner[k], corner[k + 1]) < branch_margin)
                throw DomainError("orthogonality_residuals: contour crosses a branch point");

    constexpr std::size_t gp = 30;
    const std::size_t panels = (min_nodes + 4 * gp - 1) / (4 * gp);
    OrthogonalityResult res;
    res.margin = margin;
    res.nodes = 4 * panels * gp;
    res.residuals.assign(nu_max + 1, cplx{});
    res.scales.assign(nu_max + 1, 0.0);
    const bool has_omega = omega.degree() >= 0 && omega.size() > 0 && !(omega.degree() == 0 && omega[0] == cplx(1.0, 0.0));
    using gauss = boost::math::quadrature::gauss<double, gp>;
    for (std::size_t k = 0; k < 4; ++k) {
        const cplx a = corner[k], b = corner[k + 1];
        for (std::size_t pnl = 0; pnl < panels; ++pnl) {
            const double t0 = static_cast<double>(pnl) / static_cast<double>(panels);
            const double t1 = static_cast<double>(pnl + 1) / static_cast<double>(panels);
            const cplx pa = a + t0 * (b - a), pb = a + t1 * (b - a);
            const cplx half = 0.5 * (pb - pa), mid = 0.5 * (pa + pb);
            const auto& x = gauss::abscissa();
            const auto& w = gauss::weights();
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (int sgn : {1, -1}) {
                    if (i == 0 && sgn == -1 && x[0] == 0.0) continue;
                    const cplx t = mid + static_cast<double>(sgn) * x[i] * half;
                    cplx base = Q(t) * eval_continued(f, t, path_avoiding(f, L, t)) * half * w[i];
                    if (has_omega) base /= omega(t);
                    cplx pw = 1.0;
                    for (std::size_t nu = 0; nu <= nu_max; ++nu) {
                        res.residuals[nu] += base * pw;
                        res.scales[nu] += std::abs(base * pw);
                        pw *= t;
                    }
                }
            }
        }
    }
    for (std::size_t nu = 0; nu <= nu_max; ++nu)
        if (res.scales[nu] > 0.0) res.max_relative = std::max(res.max_relative, std::abs(res.residuals[nu]) / res.scales[nu]);
    return res;
}

}  // namespace capmin

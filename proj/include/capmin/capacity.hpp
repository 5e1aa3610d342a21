#pragma once

// Weighted capacity by two estimators (weighted Fekete points and discrete
// energy minimization on the simplex), plus balayage and equilibrium
// measures.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "capmin/field.hpp"

namespace capmin {

enum class CapacityMethod { fekete, energy };

inline std::string to_string(CapacityMethod m) { return m == CapacityMethod::fekete ? "fekete" : "energy"; }

struct CapacityEstimate {
    double value = 0.0;
    CapacityMethod method = CapacityMethod::energy;
    std::size_t n_or_m = 0;
    double energy = 0.0;
    double robin = 0.0;
    bool converged = true;
    bool degenerate = false;   // single-point or zero-length set: capacity 0
    std::size_t iterations = 0;
    std::optional<double> transfinite_diameter;  // raw Fekete product, fekete only
    PointCloud cloud;
    std::optional<DiscreteMeasure> measure;      // energy minimizer or Fekete counting measure
    std::vector<std::size_t> fekete_indices;     // into cloud, fekete only
};

namespace detail {

/// Energy of a uniform unit measure on a segment of length s.
inline double cell_self_energy(double s) {
    if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log(s) + 1.5;
}

/// Symmetric kernel matrix -log|z_i - z_j| with cell self-energies on the
/// diagonal, stored row-major.
inline std::vector<double> energy_matrix(const PointCloud& cloud) {
    const std::size_t m = cloud.size();
    std::vector<double> A(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        A[i * m + i] = cell_self_energy(cloud.points[i].cell);
        for (std::size_t j = i + 1; j < m; ++j) {
            const double v = -std::log(std::abs(cloud.points[i].z - cloud.points[j].z));
            A[i * m + j] = v;
            A[j * m + i] = v;
        }
    }
    return A;
}

inline bool degenerate_set(const Compactum& K) {
    for (const auto& a : K.components())
        if (!a.is_point() && a.length() > 0.0) return false;
    return true;
}

}  // namespace detail

struct EnergyOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;
};

/// Minimizes w^T A w + 2 f^T w over the simplex by pairwise conditional
/// gradient steps (mass moves from the worst support atom to the best
/// vertex) with exact line search.
struct SimplexResult {
    std::vector<double> w;
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

inline SimplexResult minimize_on_simplex(const std::vector<double>& A, const std::vector<double>& f,
                                         const EnergyOptions& opt = {}) {
    const std::size_t m = f.size();
    SimplexResult r;
    r.w.assign(m, 1.0 / static_cast<double>(m));
    std::vector<double> Aw(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += A[i * m + j] * r.w[j];
        Aw[i] = s;
    }
    auto energy = [&]() {
        double e = 0.0;
        for (std::size_t i = 0; i < m; ++i) e += r.w[i] * (Aw[i] + 2.0 * f[i]);
        return e;
    };
    double E = energy();
    for (std::size_t it = 0; it < opt.max_iterations; ++it) {
        r.iterations = it + 1;
        std::size_t best = 0, worst = m;
        double gmin = std::numeric_limits<double>::infinity();
        double gmax = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double g = 2.0 * (Aw[i] + f[i]);
            if (g < gmin) {
                gmin = g;
                best = i;
            }
            if (r.w[i] > 0.0 && g > gmax) {
                gmax = g;
                worst = i;
            }
        }
        if (worst == m || best == worst || gmax - gmin <= 0.0) {
            r.converged = true;
            break;
        }
        const double a = A[best * m + best] + A[worst * m + worst] - 2.0 * A[best * m + worst];
        const double b = gmin - gmax;
        double step = r.w[worst];
        bool drop = true;
        if (a > 0.0 && -b / (2.0 * a) < step) {
            step = -b / (2.0 * a);
            drop = false;
        }
        r.w[best] += step;
        r.w[worst] = drop ? 0.0 : r.w[worst] - step;
        for (std::size_t i = 0; i < m; ++i) Aw[i] += step * (A[i * m + best] - A[i * m + worst]);
        const double En = energy();
        const bool small = std::abs(En - E) < opt.tolerance * std::max(1.0, std::abs(En));
        E = En;
        if (small && !drop) {
            r.converged = true;
            break;
        }
    }
    r.energy = E;
    return r;
}

/// Discrete weighted energy minimization on discretize(K, m).
inline CapacityEstimate energy_capacity(const Compactum& K, const ExternalField& field, std::size_t m,
                                        const EnergyOptions& opt = {}) {
    if (m < 2) throw DomainError("energy_capacity: need m >= 2");
    field.require_disjoint(K);
    CapacityEstimate est;
    est.method = CapacityMethod::energy;
    est.n_or_m = m;
    if (detail::degenerate_set(K)) {
        est.degenerate = true;
        est.value = 0.0;
        est.energy = est.robin = std::numeric_limits<double>::infinity();
        return est;
    }
    est.cloud = discretize(K, m);
    const std::size_t M = est.cloud.size();
    const auto A = detail::energy_matrix(est.cloud);
    std::vector<double> f(M);
    for (std::size_t i = 0; i < M; ++i) f[i] = field(est.cloud.points[i].z);
    const auto r = minimize_on_simplex(A, f, opt);
    est.energy = r.energy;
    est.robin = r.energy;
    est.value = std::exp(-r.energy);
    est.converged = r.converged;
    est.iterations = r.iterations;
    est.measure = DiscreteMeasure::normalized(est.cloud.positions(), r.w);
    return est;
}

struct FeketeOptions {
    std::size_t candidates_per_point = 10;
    std::size_t max_passes = 200;
};

/// Weighted Fekete points selected from a candidate cloud by greedy
/// insertion and single-point exchange. The reported value is the
/// energy of the Fekete configuration with each point smeared over its
/// arclength cell; the raw product (n-th diameter) is kept alongside.
inline CapacityEstimate fekete_capacity(const Compactum& K, const ExternalField& field, std::size_t n,
                                        const FeketeOptions& opt = {}) {
    if (n < 2) throw DomainError("fekete_capacity: need n >= 2");
    field.require_disjoint(K);
    CapacityEstimate est;
    est.method = CapacityMethod::fekete;
    est.n_or_m = n;
    if (detail::degenerate_set(K)) {
        est.degenerate = true;
        est.energy = est.robin = std::numeric_limits<double>::infinity();
        return est;
    }
    est.cloud = discretize(K, std::max<std::size_t>(opt.candidates_per_point * n, 2 * K.components().size()));
    const auto& pts = est.cloud.points;
    const std::size_t M = pts.size();
    if (n > M) throw DomainError("fekete_capacity: n exceeds the candidate count");

    std::vector<double> psi(M);
    for (std::size_t i = 0; i < M; ++i) psi[i] = field(pts[i].z);
    auto lg = [&](std::size_t i, std::size_t j) { return std::log(std::abs(pts[i].z - pts[j].z)); };

    // best weighted pair
    std::size_t p0 = 0, p1 = 1;
    double bestpair = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = i + 1; j < M; ++j) {
            const double v = lg(i, j) - psi[i] - psi[j];
            if (v > bestpair) {
                bestpair = v;
                p0 = i;
                p1 = j;
            }
        }
    std::vector<std::size_t> S{p0, p1};
    std::vector<char> in(M, 0);
    in[p0] = in[p1] = 1;
    std::vector<double> sums(M, 0.0);  // sum over S of log|z_i - z_s|
    auto add = [&](std::size_t c, double sign) {
        for (std::size_t i = 0; i < M; ++i)
            if (i != c) sums[i] += sign * lg(i, c);
    };
    add(p0, 1.0);
    add(p1, 1.0);
    while (S.size() < n) {
        const double cnt = static_cast<double>(S.size());
        std::size_t c = M;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < M; ++i) {
            if (in[i]) continue;
            const double sc = sums[i] - cnt * psi[i];
            if (sc > best) {
                best = sc;
                c = i;
            }
        }
        S.push_back(c);
        in[c] = 1;
        for (std::size_t i = 0; i < M; ++i)
            if (i != c) sums[i] += lg(i, c);
    }

    std::size_t passes = 0;
    bool improved = true;
    const double nm1 = static_cast<double>(n - 1);
    while (improved && passes < opt.max_passes) {
        improved = false;
        ++passes;
        for (std::size_t qi = 0; qi < n; ++qi) {
            const std::size_t q = S[qi];
            // score of each candidate against S \ {q}
            std::size_t c = M;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < M; ++i) {
                if (in[i]) continue;
                const double sc = sums[i] - lg(i, q) - nm1 * psi[i];
                if (sc > best) {
                    best = sc;
                    c = i;
                }
            }
            const double cur = sums[q] - nm1 * psi[q];
            if (c < M && best > cur + 1e-13) {
                for (std::size_t i = 0; i < M; ++i) {
                    if (i != q) sums[i] -= lg(i, q);
                    if (i != c) sums[i] += lg(i, c);
                }
                in[q] = 0;
                in[c] = 1;
                S[qi] = c;
                improved = true;
            }
        }
    }
    est.iterations = passes;
    est.converged = !improved;

    const double dn = static_cast<double>(n);
    double pair = 0.0;  // sum over q<r of log|z_q - z_r| - psi_q - psi_r
    double logsum = 0.0;
    double psisum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        psisum += psi[S[a]];
        for (std::size_t b = a + 1; b < n; ++b) {
            logsum += lg(S[a], S[b]);
            pair += lg(S[a], S[b]) - psi[S[a]] - psi[S[b]];
        }
    }
    est.transfinite_diameter = std::exp(2.0 * pair / (dn * (dn - 1.0)));

    // arclength cells of the selected points along their own component
    const auto& comps = est.cloud.parent->components();
    std::vector<double> cell(n, 0.0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t a = 0; a < n; ++a)
            if (pts[S[a]].component == c) idx.push_back(a);
        if (idx.empty()) continue;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return pts[S[x]].arclength < pts[S[y]].arclength; });
        const double L = comps[c].length();
        const bool closed = comps[c].closed();
        const std::size_t k = idx.size();
        for (std::size_t t = 0; t < k; ++t) {
            const double s = pts[S[idx[t]]].arclength;
            double lo, hi;
            if (closed) {
                const double prev = t == 0 ? pts[S[idx[k - 1]]].arclength - L : pts[S[idx[t - 1]]].arclength;
                const double next = t + 1 == k ? pts[S[idx[0]]].arclength + L : pts[S[idx[t + 1]]].arclength;
                lo = 0.5 * (s + prev);
                hi = 0.5 * (s + next);
                if (k == 1) {
                    lo = s - 0.5 * L;
                    hi = s + 0.5 * L;
                }
            } else {
                lo = t == 0 ? 0.0 : 0.5 * (s + pts[S[idx[t - 1]]].arclength);
                hi = t + 1 == k ? L : 0.5 * (s + pts[S[idx[t + 1]]].arclength);
            }
            cell[idx[t]] = hi - lo;
        }
    }
    double self = 0.0;
    for (double s : cell) self += detail::cell_self_energy(s);
    const double I = (-2.0 * logsum + self) / (dn * dn) + 2.0 * psisum / dn;
    est.energy = I;
    est.robin = I;
    est.value = std::exp(-I);
    est.fekete_indices = S;
    std::vector<cplx> sel;
    for (auto s : S) sel.push_back(pts[s].z);
    est.measure = DiscreteMeasure::uniform(sel);
    return est;
}

/// Balayage of a discrete measure onto K: the weighted-energy minimizer for
/// the field V^{-mu}. delta_infinity gives the equilibrium measure.
inline DiscreteMeasure balayage(const DiscreteMeasure& field_measure, const Compactum& K, std::size_t m) {
    const bool at_infinity_only = std::all_of(field_measure.atoms().begin(), field_measure.atoms().end(),
                                              [](const Atom& a) { return a.z.is_infinite() || a.w == 0.0; });
    const ExternalField field = at_infinity_only ? ExternalField::zero() : ExternalField::from_measure(field_measure);
    auto est = energy_capacity(K, field, m);
    if (est.degenerate) throw DomainError("balayage onto a set of zero capacity");
    return *est.measure;
}

inline DiscreteMeasure equilibrium_measure(const Compactum& K, std::size_t m) {
    return balayage(DiscreteMeasure::dirac(ComplexPoint::infinity()), K, m);
}

}  // namespace capmin

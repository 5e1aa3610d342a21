#pragma once

// Discrete positive measures on the sphere, zero-counting measures, the
// weak-* metric rho and quantile interpolation tables.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "capmin/geometry.hpp"
#include "capmin/polynomial.hpp"

namespace capmin {

struct Atom {
    ComplexPoint z;
    double w = 0.0;
};

class DiscreteMeasure {
public:
    DiscreteMeasure() = default;

    /// Unit measures must sum to one within 1e-12; pass unit = false for
    /// masses such as n * delta_E.
    explicit DiscreteMeasure(std::vector<Atom> atoms, bool unit = true) : atoms_(std::move(atoms)), unit_(unit) {
        if (atoms_.empty()) throw DomainError("measure without atoms");
        double sum = 0.0;
        for (const auto& a : atoms_) {
            if (!(a.w >= 0.0) || !std::isfinite(a.w)) throw DomainError("negative or non-finite weight");
            sum += a.w;
        }
        if (unit_ && std::abs(sum - 1.0) > 1e-12) throw DomainError("unit measure with total mass " + std::to_string(sum));
    }

    static DiscreteMeasure dirac(const ComplexPoint& z) { return DiscreteMeasure({{z, 1.0}}); }

    /// Equal weights on the given points.
    static DiscreteMeasure uniform(const std::vector<cplx>& pts) {
        if (pts.empty()) throw DomainError("measure without atoms");
        std::vector<Atom> a;
        const double w = 1.0 / static_cast<double>(pts.size());
        for (const auto& z : pts) a.push_back({z, w});
        return DiscreteMeasure(std::move(a));
    }

    /// Normalizes arbitrary nonnegative weights to unit mass.
    static DiscreteMeasure normalized(const std::vector<cplx>& pts, const std::vector<double>& w) {
        if (pts.size() != w.size() || pts.empty()) throw DomainError("points and weights differ in length");
        double s = 0.0;
        for (double x : w) s += x;
        if (!(s > 0.0)) throw DomainError("zero total weight");
        std::vector<Atom> a;
        for (std::size_t i = 0; i < pts.size(); ++i) a.push_back({pts[i], w[i] / s});
        return DiscreteMeasure(std::move(a));
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool unit() const { return unit_; }

    double mass() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.w;
        return s;
    }

    bool has_infinite_atom() const {
        return std::any_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.z.is_infinite() && a.w > 0.0; });
    }

    /// Finite atom positions (atoms at infinity are skipped).
    std::vector<cplx> points() const {
        std::vector<cplx> p;
        for (const auto& a : atoms_)
            if (a.z.is_finite()) p.push_back(a.z.value());
        return p;
    }
    std::vector<double> weights() const {
        std::vector<double> w;
        for (const auto& a : atoms_)
            if (a.z.is_finite()) w.push_back(a.w);
        return w;
    }

    /// Integral of g over the finite atoms.
    template <class F>
    auto integrate(F&& g) const {
        decltype(g(cplx{})) acc{};
        for (const auto& a : atoms_)
            if (a.z.is_finite()) acc += a.w * g(a.z.value());
        return acc;
    }

private:
    std::vector<Atom> atoms_;
    bool unit_ = true;
};

/// Atoms within |z - center| <= radius, renormalized to unit mass. Returns
/// an empty optional when nothing is left.
inline std::optional<DiscreteMeasure> restrict_to_disk(const DiscreteMeasure& nu, double radius = 1.0, cplx center = {}) {
    std::vector<cplx> pts;
    std::vector<double> w;
    for (const auto& a : nu.atoms()) {
        if (a.z.is_infinite() || std::abs(a.z.value() - center) > radius) continue;
        pts.push_back(a.z.value());
        w.push_back(a.w);
    }
    double s = 0.0;
    for (double x : w) s += x;
    if (pts.empty() || !(s > 0.0)) return std::nullopt;
    return DiscreteMeasure::normalized(pts, w);
}

inline DiscreteMeasure zero_counting(const std::vector<cplx>& roots) {
    if (roots.empty()) throw DomainError("zero_counting: constant polynomial");
    return DiscreteMeasure::uniform(roots);
}

template <class Real>
DiscreteMeasure zero_counting(const BasicPolynomial<Real>& Q) {
    if (Q.degree() < 1) throw DomainError("zero_counting: constant polynomial");
    std::vector<cplx> r;
    for (const auto& z : poly_roots(Q).roots) r.push_back(to_cplx(z));
    return zero_counting(r);
}

inline constexpr int rho_truncation = 32;

struct WeakStarDistance {
    double value = 0.0;
    double truncation_bound = 0.0;  // tail of the series beyond the last test function
};

/// rho(nu1, nu2) = sum_p 2^-p |int g_p dnu1 - int g_p dnu2| with
/// g_{2m-1} = Re z^m and g_{2m} = Im z^m, after the affine change
/// z -> (z - center) / radius that must carry both supports into the closed
/// unit disk.
inline WeakStarDistance weak_star_distance(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2, double radius = 1.0,
                                           cplx center = {}, int P = rho_truncation) {
    if (!(radius > 0.0)) throw DomainError("bounding radius must be positive");
    const int M = (P + 1) / 2;
    auto moments = [&](const DiscreteMeasure& nu) {
        std::vector<cplx> mom(static_cast<std::size_t>(M) + 1, cplx{});
        for (const auto& a : nu.atoms()) {
            if (a.z.is_infinite()) {
                if (a.w > 0.0) throw DomainError("weak_star_distance: unbounded support");
                continue;
            }
            const cplx u = (a.z.value() - center) / radius;
            if (std::abs(u) > 1.0 + 1e-12) throw DomainError("weak_star_distance: atom outside the bounding disk");
            cplx pw = 1.0;
            for (int m = 1; m <= M; ++m) {
                pw *= u;
                mom[static_cast<std::size_t>(m)] += a.w * pw;
            }
        }
        return mom;
    };
    const auto m1 = moments(nu1);
    const auto m2 = moments(nu2);
    WeakStarDistance d;
    for (int p = 1; p <= P; ++p) {
        const auto m = static_cast<std::size_t>((p + 1) / 2);
        const cplx diff = m1[m] - m2[m];
        const double g = (p % 2 == 1) ? diff.real() : diff.imag();
        d.value += std::ldexp(std::abs(g), -p);
    }
    d.truncation_bound = std::ldexp(1.0, -P + 1);
    return d;
}

/// Moves atoms by the map, keeping weights.
inline DiscreteMeasure pushforward(const DiscreteMeasure& nu, const MapSpec& m) {
    std::vector<Atom> out;
    out.reserve(nu.size());
    for (const auto& a : nu.atoms()) out.push_back({m(a.z), a.w});
    return DiscreteMeasure(std::move(out), nu.unit());
}

template <class F>
DiscreteMeasure pushforward(const DiscreteMeasure& nu, F&& map) {
    std::vector<Atom> out;
    out.reserve(nu.size());
    for (const auto& a : nu.atoms()) out.push_back({ComplexPoint(map(a.z.value())), a.w});
    return DiscreteMeasure(std::move(out), nu.unit());
}

// ---------------------------------------------------------------------------
// Presets and interpolation tables

enum class MeasurePreset { chebyshev, lebesgue };

inline std::string to_string(MeasurePreset p) { return p == MeasurePreset::chebyshev ? "chebyshev" : "lebesgue"; }

inline MeasurePreset preset_from_string(const std::string& s) {
    if (s == "chebyshev" || s == "arcsine") return MeasurePreset::chebyshev;
    if (s == "lebesgue") return MeasurePreset::lebesgue;
    throw DomainError("unknown measure preset '" + s + "'");
}

/// p-quantile of the preset measure on [a, b].
inline double preset_quantile(MeasurePreset preset, double a, double b, double p) {
    if (preset == MeasurePreset::chebyshev) return 0.5 * (a + b) - 0.5 * (b - a) * std::cos(std::numbers::pi * p);
    return a + (b - a) * p;
}

/// Midpoint-quantile discretization with m equal atoms; for the arcsine law
/// these are the Chebyshev (Gauss) nodes.
inline DiscreteMeasure preset_measure(MeasurePreset preset, double a, double b, std::size_t m) {
    if (!(a < b)) throw DomainError("preset measure needs a < b");
    if (m == 0) throw DomainError("preset measure needs at least one atom");
    std::vector<cplx> pts;
    for (std::size_t i = 1; i <= m; ++i)
        pts.emplace_back(preset_quantile(preset, a, b, (static_cast<double>(i) - 0.5) / static_cast<double>(m)), 0.0);
    return DiscreteMeasure::uniform(pts);
}

inline DiscreteMeasure arcsine_measure(std::size_t m, double a = -1.0, double b = 1.0) {
    return preset_measure(MeasurePreset::chebyshev, a, b, m);
}

/// Equal weights on the m-th roots of unity scaled by radius.
inline DiscreteMeasure circle_uniform(std::size_t m, double radius = 1.0, double phase = 0.0) {
    std::vector<cplx> pts;
    for (std::size_t i = 0; i < m; ++i)
        pts.push_back(std::polar(radius, phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m)));
    return DiscreteMeasure::uniform(pts);
}

class InterpolationTable {
public:
    InterpolationTable(std::size_t n, std::vector<ComplexPoint> nodes) : n_(n), nodes_(std::move(nodes)) {
        if (nodes_.size() != 2 * n_ + 1) throw DomainError("interpolation table needs exactly 2n+1 nodes");
    }

    /// All 2n+1 nodes at infinity: the classical Pade setting.
    static InterpolationTable at_infinity(std::size_t n) {
        return InterpolationTable(n, std::vector<ComplexPoint>(2 * n + 1, ComplexPoint::infinity()));
    }

    std::size_t order() const { return n_; }
    const std::vector<ComplexPoint>& nodes() const { return nodes_; }

    std::size_t infinite_count() const {
        return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const ComplexPoint& z) { return z.is_infinite(); }));
    }

    DiscreteMeasure counting_measure() const {
        std::vector<Atom> a;
        const double w = 1.0 / static_cast<double>(nodes_.size());
        for (const auto& z : nodes_) a.push_back({z, w});
        return DiscreteMeasure(std::move(a));
    }

private:
    std::size_t n_;
    std::vector<ComplexPoint> nodes_;
};

/// 2n+1 nodes at the (i - 1/2)/(2n+1) quantiles of the preset on [a, b].
inline InterpolationTable quantile_nodes(MeasurePreset preset, double a, double b, std::size_t n) {
    if (!(a < b)) throw DomainError("quantile_nodes: need a < b");
    if (n < 1) throw DomainError("quantile_nodes: need n >= 1");
    const std::size_t N = 2 * n + 1;
    std::vector<ComplexPoint> nodes;
    for (std::size_t i = 1; i <= N; ++i) {
        double x = preset_quantile(preset, a, b, (static_cast<double>(i) - 0.5) / static_cast<double>(N));
        if (std::abs(x) < 1e-15 * (std::abs(a) + std::abs(b))) x = 0.0;
        nodes.emplace_back(x, 0.0);
    }
    return InterpolationTable(n, std::move(nodes));
}

}  // namespace capmin

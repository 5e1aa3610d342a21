#pragma once

// Logarithmic and spherical potentials of discrete measures, and the
// harmonic external fields psi = V^{-mu} entering the weighted energy.

#include <cmath>
#include <limits>
#include <string>

#include "capmin/measure.hpp"

namespace capmin {

/// Kernel of the spherically normalized potential: log 1/|z-t| for |t| <= 1
/// and log 1/|1-z/t| for |t| > 1.
inline double spherical_kernel(cplx z, cplx t) {
    if (std::abs(t) <= 1.0) return -std::log(std::abs(z - t));
    return -std::log(std::abs(1.0 - z / t));
}

/// Spherically normalized potential of nu at a finite point. Atoms at
/// infinity contribute nothing; landing on an atom gives +infinity.
inline double spherical_potential(const DiscreteMeasure& nu, const ComplexPoint& z) {
    if (z.is_infinite()) throw DomainError("spherical_potential: evaluation point at infinity");
    const cplx x = z.value();
    double v = 0.0;
    for (const auto& a : nu.atoms()) {
        if (a.z.is_infinite() || a.w == 0.0) continue;
        const cplx t = a.z.value();
        if (t == x) return std::numeric_limits<double>::infinity();
        v += a.w * spherical_kernel(x, t);
    }
    return v;
}

/// V^nu(z) = -sum w log|z - t|.
inline double log_potential(const DiscreteMeasure& nu, const ComplexPoint& z) {
    if (nu.has_infinite_atom()) throw DomainError("log_potential: atom at infinity, use the spherical form");
    if (z.is_infinite()) throw DomainError("log_potential: evaluation point at infinity");
    const cplx x = z.value();
    double v = 0.0;
    for (const auto& a : nu.atoms()) {
        if (a.w == 0.0) continue;
        const cplx t = a.z.value();
        if (t == x) return std::numeric_limits<double>::infinity();
        v -= a.w * std::log(std::abs(x - t));
    }
    return v;
}

/// Closed-form potentials of the two preset measures on [-1, 1].
namespace preset_potential {

/// int log|x - t| dmu(t), the negative logarithmic potential.
inline double neg_potential(MeasurePreset p, cplx x) {
    if (p == MeasurePreset::chebyshev) {
        const cplx s = std::sqrt(x - 1.0) * std::sqrt(x + 1.0);
        return std::log(std::abs(x + s)) - std::log(2.0);
    }
    auto term = [](cplx u) {
        if (u == cplx(0.0, 0.0)) return 0.0;
        return (u * std::log(u)).real();
    };
    return 0.5 * (term(x + 1.0) - term(x - 1.0)) - 1.0;
}

/// Cauchy transform int dmu(t)/(x - t), the complex derivative of an
/// analytic function whose real part is neg_potential.
inline cplx cauchy(MeasurePreset p, cplx x) {
    if (p == MeasurePreset::chebyshev) return 1.0 / (std::sqrt(x - 1.0) * std::sqrt(x + 1.0));
    return 0.5 * (std::log(x + 1.0) - std::log(x - 1.0));
}

}  // namespace preset_potential

/// psi = V^{-mu}. Kinds: zero (mu = delta_infinity), a discrete measure, or
/// the scaled preset field psi_k(z) = V^{-mu}(z/k) - V^{-mu}(0) with mu a
/// preset measure on [-1, 1].
class ExternalField {
public:
    enum class Kind { zero, measure, preset_scaled };

    static ExternalField zero() { return ExternalField(); }

    static ExternalField from_measure(DiscreteMeasure mu) {
        if (std::abs(mu.mass() - 1.0) > 1e-12) throw DomainError("field measure must have unit mass");
        ExternalField f;
        f.kind_ = Kind::measure;
        f.mu_ = std::move(mu);
        return f;
    }

    static ExternalField preset_scaled(MeasurePreset preset, double k) {
        if (!(k > 0.0)) throw DomainError("field scale k must be positive");
        ExternalField f;
        f.kind_ = Kind::preset_scaled;
        f.preset_ = preset;
        f.k_ = k;
        return f;
    }

    Kind kind() const { return kind_; }
    const DiscreteMeasure& measure() const { return mu_; }
    MeasurePreset preset() const { return preset_; }
    double scale() const { return k_; }

    std::string describe() const {
        switch (kind_) {
            case Kind::zero: return "zero";
            case Kind::measure: return "measure";
            case Kind::preset_scaled: return "psi_k(" + to_string(preset_) + ", k=" + std::to_string(k_) + ")";
        }
        return "";
    }

    /// psi(z) at a finite point.
    double operator()(cplx z) const {
        switch (kind_) {
            case Kind::zero:
                return 0.0;
            case Kind::measure:
                return -spherical_potential(mu_, z);
            case Kind::preset_scaled:
                return preset_potential::neg_potential(preset_, z / k_) - preset_potential::neg_potential(preset_, 0.0);
        }
        return 0.0;
    }

    /// Complex derivative Phi' of a local analytic Phi with psi = Re Phi.
    cplx derivative(cplx z) const {
        switch (kind_) {
            case Kind::zero:
                return 0.0;
            case Kind::measure: {
                cplx s = 0.0;
                for (const auto& a : mu_.atoms())
                    if (a.z.is_finite() && a.w > 0.0) s += a.w / (z - a.z.value());
                return s;
            }
            case Kind::preset_scaled:
                return preset_potential::cauchy(preset_, z / k_) / k_;
        }
        return 0.0;
    }

    /// Finite support of a discrete field measure (empty for other kinds).
    std::vector<cplx> finite_support() const {
        if (kind_ != Kind::measure) return {};
        std::vector<cplx> s;
        for (const auto& a : mu_.atoms())
            if (a.z.is_finite() && a.w > 0.0) s.push_back(a.z.value());
        return s;
    }

    /// True when some atom at infinity carries mass (the zero field counts).
    bool charges_infinity() const {
        if (kind_ == Kind::zero) return true;
        if (kind_ == Kind::preset_scaled) return false;
        return mu_.has_infinite_atom();
    }

    /// Throws when the discrete field measure touches K.
    void require_disjoint(const Compactum& K) const {
        const auto s = finite_support();
        if (s.empty()) return;
        std::vector<Arc> pts;
        for (const auto& z : s) pts.push_back(Arc::point(z));
        const double tol = 1e-12 * std::max(1.0, K.diameter());
        if (set_distance(Compactum(pts), K) <= tol) throw DomainError("field support intersects the compactum");
    }

private:
    Kind kind_ = Kind::zero;
    DiscreteMeasure mu_;
    MeasurePreset preset_ = MeasurePreset::chebyshev;
    double k_ = 1.0;
};

/// max over the closed unit disk of |psi|, sampled on a polar grid.
inline double max_abs_on_disk(const ExternalField& psi, std::size_t radial = 64, std::size_t angular = 256) {
    double best = 0.0;
    for (std::size_t i = 1; i <= radial; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(radial);
        for (std::size_t j = 0; j < angular; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angular);
            best = std::max(best, std::abs(psi(std::polar(r, th))));
        }
    }
    return std::max(best, std::abs(psi(0.0)));
}

}  // namespace capmin

#pragma once

// Weighted energies, Green potentials, Robin constants and the variational
// diagnostics for symmetric (S-property) compacta.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "capmin/capacity.hpp"

namespace capmin {

struct EnergyValue {
    double value = 0.0;
    bool infinite = false;
    bool discrete = true;  // diagonal excluded
};

/// Discrete weighted energy: pair terms over i != j plus twice the field
/// integral.
inline EnergyValue weighted_energy(const DiscreteMeasure& nu, const ExternalField& field) {
    const auto& at = nu.atoms();
    if (at.size() < 2) throw DomainError("weighted_energy: need at least two atoms");
    for (const auto& a : at)
        if (a.z.is_infinite() && a.w > 0.0) throw DomainError("weighted_energy: atom at infinity");
    EnergyValue E;
    const auto supp = field.finite_support();
    double pair = 0.0;
    double fld = 0.0;
    for (std::size_t i = 0; i < at.size(); ++i) {
        if (at[i].w == 0.0) continue;
        const cplx zi = at[i].z.value();
        for (const auto& s : supp)
            if (s == zi) throw DomainError("weighted_energy: field support meets the measure");
        for (std::size_t j = i + 1; j < at.size(); ++j) {
            if (at[j].w == 0.0) continue;
            const double d = std::abs(zi - at[j].z.value());
            if (d == 0.0) {
                E.infinite = true;
                E.value = std::numeric_limits<double>::infinity();
                return E;
            }
            pair -= at[i].w * at[j].w * std::log(d);
        }
        fld += at[i].w * field(zi);
    }
    E.value = 2.0 * pair + 2.0 * fld;
    return E;
}

namespace detail {

/// Winding number of a closed polyline around z (0 when z is outside).
inline int winding_number(const Arc& arc, cplx z) {
    double total = 0.0;
    for (std::size_t i = 1; i < arc.vertices.size(); ++i)
        total += std::arg((arc.vertices[i] - z) / (arc.vertices[i - 1] - z));
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace detail

/// Green potential G_K^mu = V^{mu - mu~_K} + w_K^mu of the complement of K.
/// The balayage is computed once at construction; w_K^mu is the
/// balayage-weighted mean of V^{mu~} + psi over K, so G vanishes in mean on K.
class GreenFunction {
public:
    GreenFunction(const Compactum& K, ExternalField field, std::size_t m = 400)
        : K_(K), field_(std::move(field)) {
        est_ = energy_capacity(K_, field_, m);
        if (est_.degenerate) throw DomainError("green_potential: compactum of zero capacity");
        nu_ = est_.measure->weights();
        const auto& pts = est_.cloud.points;
        double w = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) w += nu_[i] * (potential_at_atom(i) + field_(pts[i].z));
        constant_ = w;

        for (const auto& a : K_.components())
            if (a.closed()) closed_.push_back(&a - K_.components().data());
        if (field_.charges_infinity()) sources_.push_back(signature_infinity());
        for (const auto& s : field_.finite_support()) sources_.push_back(signature(s));
        if (field_.kind() == ExternalField::Kind::preset_scaled) sources_.clear();
    }

    double constant() const { return constant_; }
    const CapacityEstimate& balayage_estimate() const { return est_; }
    DiscreteMeasure balayage() const { return *est_.measure; }

    /// V^{mu~}(z) in spherical normalization; at an atom the cell average is used.
    double balayage_potential(cplx z) const {
        const auto& pts = est_.cloud.points;
        double v = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (nu_[i] == 0.0) continue;
            if (pts[i].z == z) {
                v += nu_[i] * (cell_self_energy(pts[i].cell) + sph_shift(pts[i].z));
                continue;
            }
            v += nu_[i] * spherical_kernel(z, pts[i].z);
        }
        return v;
    }

    double operator()(const ComplexPoint& zp) const {
        if (zp.is_infinite()) throw DomainError("green_potential: evaluation at infinity");
        const cplx z = zp.value();
        if (!sources_.empty() && !closed_.empty()) {
            const auto sig = signature(z);
            if (std::find(sources_.begin(), sources_.end(), sig) == sources_.end()) return 0.0;
        }
        return constant_ - balayage_potential(z) - field_(z);
    }

private:
    static double cell_self_energy(double s) { return detail::cell_self_energy(s); }
    static double sph_shift(cplx t) { return std::abs(t) > 1.0 ? std::log(std::abs(t)) : 0.0; }

    double potential_at_atom(std::size_t i) const { return balayage_potential(est_.cloud.points[i].z); }

    std::vector<int> signature(cplx z) const {
        std::vector<int> s;
        for (auto c : closed_) s.push_back(detail::winding_number(K_.components()[static_cast<std::size_t>(c)], z) != 0);
        return s;
    }
    std::vector<int> signature_infinity() const { return std::vector<int>(closed_.size(), 0); }

    Compactum K_;
    ExternalField field_;
    CapacityEstimate est_;
    std::vector<double> nu_;
    double constant_ = 0.0;
    std::vector<std::ptrdiff_t> closed_;
    std::vector<std::vector<int>> sources_;
};

inline double green_potential(const Compactum& K, const ExternalField& field, const ComplexPoint& z, std::size_t m = 400) {
    return GreenFunction(K, field, m)(z);
}

struct RobinValue {
    double value = 0.0;
    bool infinite = false;
    std::size_t m = 0;
};

/// w_K, the minimal unweighted discrete energy; cap K = exp(-w_K).
inline RobinValue robin_constant(const Compactum& K, std::size_t m = 400) {
    const auto est = energy_capacity(K, ExternalField::zero(), m);
    if (est.degenerate) return {std::numeric_limits<double>::infinity(), true, m};
    return {est.energy, false, m};
}

// ---------------------------------------------------------------------------
// Variations z -> z + t h_w(z), h_w(z) = A(z)/(z - w)

struct VariationSpec {
    ComplexPoint w;
    std::vector<cplx> branch_points;
    cplx t{1e-3, 0.0};

    cplx h(cplx z) const {
        cplx A = 1.0;
        for (const auto& b : branch_points) A *= z - b;
        return A / (z - w.value());
    }
    cplx dh(cplx z) const {
        cplx A = 1.0;
        cplx dA = 0.0;
        for (const auto& b : branch_points) {
            dA = dA * (z - b) + A;
            A *= z - b;
        }
        const cplx d = z - w.value();
        return (dA * d - A) / (d * d);
    }
};

/// How the i = j terms of the first double sum are treated.
enum class VariationDiagonal { analytic_limit, excluded };

/// H_{w,mu}(nu): the first-order coefficient of the energy increment,
/// I(nu_t) - I(nu) = Re(t H) + O(t^2).
inline cplx variation_functional(const DiscreteMeasure& nu, const ExternalField& field, const VariationSpec& spec,
                                 VariationDiagonal diag = VariationDiagonal::analytic_limit) {
    if (spec.w.is_infinite()) throw DomainError("variation: pole w must be finite");
    const cplx w = spec.w.value();
    for (const auto& b : spec.branch_points)
        if (b == w) throw DomainError("variation: w coincides with a branch point");
    const auto pts = nu.points();
    const auto wt = nu.weights();
    const auto supp = field.finite_support();
    for (const auto& z : pts) {
        if (z == w) throw DomainError("variation: w lies in the support of nu");
        for (const auto& s : supp)
            if (s == z) throw DomainError("variation: field support meets the measure");
    }
    std::vector<cplx> h(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) h[i] = spec.h(pts[i]);
    cplx pair = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) pair += 2.0 * wt[i] * wt[j] * (h[i] - h[j]) / (pts[i] - pts[j]);
        if (diag == VariationDiagonal::analytic_limit) pair += wt[i] * wt[i] * spec.dh(pts[i]);
    }
    cplx fld = 0.0;
    if (field.kind() != ExternalField::Kind::zero)
        for (std::size_t i = 0; i < pts.size(); ++i) fld += wt[i] * h[i] * field.derivative(pts[i]);
    return -pair + 2.0 * fld;
}

struct IncrementCheck {
    cplx H;
    double residual_t = 0.0;       // |I(nu_t) - I(nu) - Re(t H)|
    double residual_half = 0.0;    // same at t/2
    double ratio = 0.0;
};

/// First-order check of the energy increment under t-halving; uses the
/// diagonal-free H so that it matches the discrete energy exactly.
inline IncrementCheck energy_increment_check(const DiscreteMeasure& nu, const ExternalField& field, const VariationSpec& spec) {
    IncrementCheck c;
    c.H = variation_functional(nu, field, spec, VariationDiagonal::excluded);
    const double I0 = weighted_energy(nu, field).value;
    auto residual = [&](cplx t) {
        const auto moved = pushforward(nu, [&](cplx z) { return z + t * spec.h(z); });
        return std::abs(weighted_energy(moved, field).value - I0 - (t * c.H).real());
    };
    c.residual_t = residual(spec.t);
    c.residual_half = residual(0.5 * spec.t);
    c.ratio = c.residual_half > 0.0 ? c.residual_t / c.residual_half : std::numeric_limits<double>::infinity();
    return c;
}

struct SPropertyReport {
    double max_asymmetry = 0.0;
    double mean_asymmetry = 0.0;
    double delta = 0.0;
    std::size_t probes = 0;
    std::size_t m = 0;
    std::vector<cplx> probe_points;
    std::vector<double> d_plus, d_minus;
};

/// One-sided normal derivatives of the Green potential at interior arc
/// points; reports max |d+ - d-| / (d+ + d-). delta <= 0 selects ten
/// times the mean sample spacing.
inline SPropertyReport s_property_diagnostic(const Compactum& F, const ExternalField& field, std::size_t probe_count,
                                             double delta = 0.0, std::size_t m = 400) {
    if (probe_count == 0) throw DomainError("s_property_diagnostic: need at least one probe");
    GreenFunction G(F, field, m);
    const double spacing = G.balayage_estimate().cloud.mean_spacing();
    if (delta <= 0.0) delta = 10.0 * spacing;
    if (delta < spacing) throw DomainError("s_property_diagnostic: delta below the discretization resolution");

    SPropertyReport r;
    r.delta = delta;
    r.m = m;
    std::vector<const Arc*> arcs;
    for (const auto& a : F.components())
        if (!a.is_point() && a.length() > 0.0) arcs.push_back(&a);
    if (arcs.empty()) throw DomainError("s_property_diagnostic: no arcs");
    for (std::size_t p = 0; p < probe_count; ++p) {
        const Arc& arc = *arcs[p % arcs.size()];
        const std::size_t slot = p / arcs.size();
        const std::size_t per = (probe_count + arcs.size() - 1) / arcs.size();
        const double frac = 0.15 + 0.7 * (static_cast<double>(slot) + 0.5) / static_cast<double>(per);
        const double L = arc.length();
        const double s = frac * L;
        const double ds = 1e-6 * L;
        const cplx zeta = arc.at(s);
        const cplx tangent = arc.at(std::min(L, s + ds)) - arc.at(std::max(0.0, s - ds));
        const cplx normal = cplx(0.0, 1.0) * tangent / std::abs(tangent);
        const double g0 = G(zeta);
        const double dp = (G(zeta + delta * normal) - g0) / delta;
        const double dm = (G(zeta - delta * normal) - g0) / delta;
        const double denom = dp + dm;
        const double asym = denom > 0.0 ? std::abs(dp - dm) / denom : std::numeric_limits<double>::infinity();
        r.max_asymmetry = std::max(r.max_asymmetry, asym);
        r.mean_asymmetry += asym / static_cast<double>(probe_count);
        r.probe_points.push_back(zeta);
        r.d_plus.push_back(dp);
        r.d_minus.push_back(dm);
    }
    r.probes = probe_count;
    return r;
}

}  // namespace capmin

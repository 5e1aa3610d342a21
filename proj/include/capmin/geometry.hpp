#pragma once

// Riemann-sphere geometry: points with an explicit point at infinity,
// compacta as unions of polylines, the chordal metric, projection and
// clamping maps, and builders for the sets used by the experiments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "capmin/numeric.hpp"

namespace capmin {

class ComplexPoint {
public:
    ComplexPoint() = default;
    ComplexPoint(double re, double im) : z_(re, im) { check(); }
    ComplexPoint(cplx z) : z_(z) { check(); }  // NOLINT(google-explicit-constructor)

    static ComplexPoint infinity() {
        ComplexPoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Finite coordinate; calling this on the point at infinity is an error.
    cplx value() const {
        if (infinite_) throw DomainError("point at infinity has no finite coordinate");
        return z_;
    }
    double re() const { return value().real(); }
    double im() const { return value().imag(); }

    friend bool operator==(const ComplexPoint& a, const ComplexPoint& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.z_ == b.z_;
    }

private:
    void check() const {
        if (!std::isfinite(z_.real()) || !std::isfinite(z_.imag()))
            throw DomainError("finite point with non-finite coordinates");
    }

    cplx z_{0.0, 0.0};
    bool infinite_ = false;
};

/// Chordal distance |z-w| / sqrt((1+|z|^2)(1+|w|^2)), extended to infinity.
inline double chordal_distance(const ComplexPoint& z, const ComplexPoint& w) {
    if (z.is_infinite() && w.is_infinite()) return 0.0;
    if (z.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(w.value()));
    if (w.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(z.value()));
    const cplx a = z.value();
    const cplx b = w.value();
    return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

/// One connected piece of a compactum: an isolated point (possibly infinity),
/// an open polyline, or a closed polyline (first vertex repeated at the end).
struct Arc {
    std::vector<cplx> vertices;
    bool at_infinity = false;

    static Arc point(cplx z) { return Arc{{z}, false}; }
    static Arc infinity() { return Arc{{}, true}; }
    static Arc segment(cplx a, cplx b) { return Arc{{a, b}, false}; }

    bool is_point() const { return at_infinity || vertices.size() == 1; }

    bool closed() const {
        if (vertices.size() < 3) return false;
        const double scale = 1.0 + std::abs(vertices.front());
        return std::abs(vertices.front() - vertices.back()) <= 1e-14 * scale;
    }

    double length() const {
        double len = 0.0;
        for (std::size_t i = 1; i < vertices.size(); ++i) len += std::abs(vertices[i] - vertices[i - 1]);
        return len;
    }

    /// Point at arclength s (clamped to [0, length]).
    cplx at(double s) const {
        if (vertices.size() == 1) return vertices.front();
        double acc = 0.0;
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            const double seg = std::abs(vertices[i] - vertices[i - 1]);
            if (s <= acc + seg || i + 1 == vertices.size()) {
                const double t = seg > 0.0 ? std::clamp((s - acc) / seg, 0.0, 1.0) : 0.0;
                return vertices[i - 1] + t * (vertices[i] - vertices[i - 1]);
            }
            acc += seg;
        }
        return vertices.back();
    }
};

class Compactum {
public:
    Compactum() = default;
    explicit Compactum(std::vector<Arc> components, std::optional<std::string> label = std::nullopt)
        : components_(std::move(components)), label_(std::move(label)) {
        validate();
    }

    const std::vector<Arc>& components() const { return components_; }
    const std::optional<std::string>& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    bool contains_infinity() const {
        return std::any_of(components_.begin(), components_.end(), [](const Arc& a) { return a.at_infinity; });
    }

    std::vector<cplx> finite_vertices() const {
        std::vector<cplx> out;
        for (const auto& a : components_) out.insert(out.end(), a.vertices.begin(), a.vertices.end());
        return out;
    }

    double total_length() const {
        double len = 0.0;
        for (const auto& a : components_) len += a.length();
        return len;
    }

    /// Euclidean diameter of the finite vertex set.
    double diameter() const {
        const auto v = finite_vertices();
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, std::abs(v[i] - v[j]));
        return d;
    }

private:
    void validate() const {
        if (components_.empty()) throw DomainError("compactum needs at least one component");
        for (const auto& a : components_) {
            if (a.at_infinity) {
                if (!a.vertices.empty()) throw DomainError("infinity component carries vertices");
                continue;
            }
            if (a.vertices.empty()) throw DomainError("arc without vertices");
            for (const auto& v : a.vertices)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw DomainError("non-finite vertex");
        }
    }

    std::vector<Arc> components_;
    std::optional<std::string> label_;
};

/// Default polyline resolution relative to the diameter.
inline constexpr double default_tau_disc = 1e-3;

struct CloudPoint {
    cplx z;
    std::size_t component = 0;
    double arclength = 0.0;  // position along its arc
    double cell = 0.0;       // arclength share represented by this sample
};

struct PointCloud {
    std::vector<CloudPoint> points;
    std::shared_ptr<const Compactum> parent;

    std::size_t size() const { return points.size(); }
    std::vector<cplx> positions() const {
        std::vector<cplx> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(p.z);
        return out;
    }
    double mean_spacing() const {
        if (points.empty()) return 0.0;
        double sum = 0.0;
        for (const auto& p : points) sum += p.cell;
        return sum / static_cast<double>(points.size());
    }
};

/// Quasi-uniform arclength sampling with n points in total. Arcs receive a
/// share proportional to their length (at least two each, endpoints
/// included); isolated finite points receive one sample. Infinity is not
/// representable in a cloud.
inline PointCloud discretize(const Compactum& K, std::size_t n) {
    const auto& comps = K.components();
    if (K.contains_infinity()) throw DomainError("cannot discretize a compactum containing infinity");

    std::size_t fixed = 0;
    double total = 0.0;
    std::size_t arcs = 0;
    for (const auto& a : comps) {
        if (a.is_point() || a.length() == 0.0) {
            ++fixed;
        } else {
            ++arcs;
            total += a.length();
        }
    }
    if (n < fixed + 2 * arcs) throw DomainError("discretize: need at least 2 points per arc component");

    // Largest-remainder allocation over the arcs, with a floor of two.
    std::vector<std::size_t> count(comps.size(), 0);
    const std::size_t budget = n - fixed;
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t used = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& a = comps[c];
        if (a.is_point() || a.length() == 0.0) {
            count[c] = 1;
            continue;
        }
        const double share = static_cast<double>(budget) * a.length() / total;
        count[c] = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(share)));
        used += count[c];
        remainders.emplace_back(share - std::floor(share), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t i = 0; used < budget && !remainders.empty(); i = (i + 1) % remainders.size()) {
        ++count[remainders[i].second];
        ++used;
    }
    while (used > budget) {
        // floors of two overshot: take points back from the largest arcs
        auto it = std::max_element(count.begin(), count.end());
        if (*it <= 2) break;
        --*it;
        --used;
    }

    PointCloud cloud;
    cloud.parent = std::make_shared<const Compactum>(K);
    const double scale = 1.0 + K.diameter();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& a = comps[c];
        if (a.is_point() || a.length() == 0.0) {
            cloud.points.push_back({a.vertices.front(), c, 0.0, 0.0});
            continue;
        }
        const double len = a.length();
        const std::size_t m = count[c];
        const bool closed = a.closed();
        const double h = closed ? len / static_cast<double>(m) : len / static_cast<double>(m - 1);
        for (std::size_t i = 0; i < m; ++i) {
            const double s = h * static_cast<double>(i);
            double cell = h;
            if (!closed && (i == 0 || i + 1 == m)) cell = 0.5 * h;
            cloud.points.push_back({a.at(s), c, s, cell});
        }
    }

    // Samples shared by crossing arcs are merged; the survivor keeps the mass.
    std::vector<CloudPoint> unique;
    unique.reserve(cloud.points.size());
    for (const auto& p : cloud.points) {
        auto dup = std::find_if(unique.begin(), unique.end(),
                                [&](const CloudPoint& q) { return std::abs(q.z - p.z) <= 1e-13 * scale; });
        if (dup == unique.end()) {
            unique.push_back(p);
        } else {
            dup->cell += p.cell;
        }
    }
    cloud.points = std::move(unique);
    return cloud;
}

namespace detail {

inline double point_segment_distance(cplx z, cplx a, cplx b, cplx* foot = nullptr) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    const cplx p = a + t * d;
    if (foot) *foot = p;
    return std::abs(z - p);
}

/// Chordal distance from z to the nearest point of an arc, using the
/// Euclidean foot point on each segment.
inline double chordal_to_arc(const ComplexPoint& z, const Arc& arc) {
    if (arc.at_infinity) return chordal_distance(z, ComplexPoint::infinity());
    if (z.is_infinite()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : arc.vertices) best = std::min(best, chordal_distance(z, v));
        return best;
    }
    if (arc.vertices.size() == 1) return chordal_distance(z, arc.vertices.front());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < arc.vertices.size(); ++i) {
        cplx foot;
        point_segment_distance(z.value(), arc.vertices[i - 1], arc.vertices[i], &foot);
        best = std::min({best, chordal_distance(z, foot), chordal_distance(z, arc.vertices[i - 1]),
                         chordal_distance(z, arc.vertices[i])});
    }
    return best;
}

inline double chordal_to_set(const ComplexPoint& z, const Compactum& K) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : K.components()) best = std::min(best, chordal_to_arc(z, a));
    return best;
}

/// Dense samples of K with spacing at most `spacing` along every arc.
inline std::vector<ComplexPoint> dense_samples(const Compactum& K, double spacing) {
    std::vector<ComplexPoint> out;
    for (const auto& a : K.components()) {
        if (a.at_infinity) {
            out.push_back(ComplexPoint::infinity());
            continue;
        }
        if (a.vertices.size() == 1) {
            out.emplace_back(a.vertices.front());
            continue;
        }
        for (std::size_t i = 1; i < a.vertices.size(); ++i) {
            const cplx p = a.vertices[i - 1];
            const cplx q = a.vertices[i];
            const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(q - p) / spacing)));
            for (std::size_t s = 0; s < steps; ++s) out.emplace_back(p + (q - p) * (static_cast<double>(s) / static_cast<double>(steps)));
        }
        out.emplace_back(a.vertices.back());
    }
    return out;
}

}  // namespace detail

/// Spherical Hausdorff distance, evaluated by sweeping dense samples of each
/// set against the polylines of the other.
inline double hausdorff_distance(const Compactum& K1, const Compactum& K2, double tau = default_tau_disc) {
    const double diam = std::max({K1.diameter(), K2.diameter(), 1e-12});
    const double spacing = tau * diam;
    auto directed = [spacing](const Compactum& A, const Compactum& B) {
        double worst = 0.0;
        for (const auto& z : detail::dense_samples(A, spacing)) worst = std::max(worst, detail::chordal_to_set(z, B));
        return worst;
    };
    return std::max(directed(K1, K2), directed(K2, K1));
}

/// Largest chordal distance from any of `points` to K (one-sided).
inline double max_distance_to(const std::vector<ComplexPoint>& points, const Compactum& K) {
    double worst = 0.0;
    for (const auto& z : points) worst = std::max(worst, detail::chordal_to_set(z, K));
    return worst;
}

// ---------------------------------------------------------------------------
// Maps

enum class MapKind { disk_projection, annulus_projection, halfplane_clamp_upper, halfplane_clamp_lower, scale };

struct MapSpec {
    MapKind kind = MapKind::scale;
    double p1 = 1.0;  // R, r, clamp height 1/j, or scale factor k
    double p2 = 0.0;  // R for the annulus

    static MapSpec disk_projection(double R) { return checked({MapKind::disk_projection, R, 0.0}); }
    static MapSpec annulus_projection(double r, double R) { return checked({MapKind::annulus_projection, r, R}); }
    static MapSpec halfplane_clamp_upper(double height) { return checked({MapKind::halfplane_clamp_upper, height, 0.0}); }
    static MapSpec halfplane_clamp_lower(double height) { return checked({MapKind::halfplane_clamp_lower, height, 0.0}); }
    static MapSpec scale(double k) { return checked({MapKind::scale, k, 0.0}); }

    static MapSpec checked(MapSpec m) {
        if (!(m.p1 > 0.0) || !std::isfinite(m.p1)) throw DomainError("map parameter must be positive");
        if (m.kind == MapKind::annulus_projection && !(m.p1 < m.p2))
            throw DomainError("annulus projection needs r < R");
        return m;
    }

    cplx operator()(cplx z) const {
        switch (kind) {
            case MapKind::disk_projection: {
                const double a = std::abs(z);
                return a <= p1 ? z : z * (p1 / a);
            }
            case MapKind::annulus_projection: {
                const double a = std::abs(z);
                if (a < p1) {
                    // the origin has no direction; send it to r on the positive axis
                    return a == 0.0 ? cplx(p1, 0.0) : z * (p1 / a);
                }
                return a > p2 ? z * (p2 / a) : z;
            }
            case MapKind::halfplane_clamp_upper:
                return {z.real(), std::max(z.imag(), p1)};
            case MapKind::halfplane_clamp_lower:
                return {z.real(), std::min(z.imag(), -p1)};
            case MapKind::scale:
                return z * p1;
        }
        return z;
    }

    ComplexPoint operator()(const ComplexPoint& z) const {
        if (z.is_infinite()) {
            if (kind == MapKind::scale) return z;
            throw DomainError("map is undefined at infinity");
        }
        return (*this)(z.value());
    }
};

namespace detail {

/// Parameters t in (0,1) where the segment p + t(q-p) meets |z| = radius.
inline std::vector<double> circle_crossings(cplx p, cplx q, double radius) {
    const cplx d = q - p;
    const double a = std::norm(d);
    const double b = 2.0 * (std::conj(p) * d).real();
    const double c = std::norm(p) - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    std::vector<double> ts;
    if (a == 0.0 || disc < 0.0) return ts;
    const double sq = std::sqrt(disc);
    for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
        if (t > 0.0 && t < 1.0) ts.push_back(t);
    return ts;
}

inline std::vector<double> line_crossing(cplx p, cplx q, double height) {
    const double dy = q.imag() - p.imag();
    if (dy == 0.0) return {};
    const double t = (height - p.imag()) / dy;
    if (t > 0.0 && t < 1.0) return {t};
    return {};
}

}  // namespace detail

/// Image of K under m. Polylines are split where they cross the map's
/// switching curves; radially projected pieces are resampled so the image
/// polyline stays within tau * diam of the true (circular) image.
inline Compactum apply_map(const Compactum& K, const MapSpec& m, double tau = default_tau_disc) {
    const double tol = tau * std::max(K.diameter(), 1e-12);
    std::vector<Arc> out;
    for (const auto& arc : K.components()) {
        if (arc.at_infinity) {
            if (m.kind != MapKind::scale) throw DomainError("map is undefined at infinity");
            out.push_back(arc);
            continue;
        }
        if (arc.vertices.size() == 1) {
            out.push_back(Arc::point(m(arc.vertices.front())));
            continue;
        }
        Arc img;
        img.vertices.push_back(m(arc.vertices.front()));
        for (std::size_t i = 1; i < arc.vertices.size(); ++i) {
            const cplx p = arc.vertices[i - 1];
            const cplx q = arc.vertices[i];
            std::vector<double> ts;
            switch (m.kind) {
                case MapKind::disk_projection:
                    ts = detail::circle_crossings(p, q, m.p1);
                    break;
                case MapKind::annulus_projection: {
                    ts = detail::circle_crossings(p, q, m.p1);
                    auto more = detail::circle_crossings(p, q, m.p2);
                    ts.insert(ts.end(), more.begin(), more.end());
                    break;
                }
                case MapKind::halfplane_clamp_upper:
                    ts = detail::line_crossing(p, q, m.p1);
                    break;
                case MapKind::halfplane_clamp_lower:
                    ts = detail::line_crossing(p, q, -m.p1);
                    break;
                case MapKind::scale:
                    break;
            }
            ts.push_back(1.0);
            std::sort(ts.begin(), ts.end());
            double t0 = 0.0;
            for (double t1 : ts) {
                const cplx a = p + t0 * (q - p);
                const cplx b = p + t1 * (q - p);
                const cplx mid = 0.5 * (a + b);
                const bool radial =
                    (m.kind == MapKind::disk_projection && std::abs(mid) > m.p1) ||
                    (m.kind == MapKind::annulus_projection && (std::abs(mid) > m.p2 || std::abs(mid) < m.p1));
                std::size_t pieces = 1;
                if (radial) {
                    // chord sagitta on a circle of radius R for angle step h: R(1-cos(h/2))
                    const double R = std::abs(m(mid));
                    const cplx ia = m(a);
                    const cplx ib = m(b);
                    const double angle = std::abs(std::arg(ib / ia));
                    const double max_step = 2.0 * std::acos(std::max(-1.0, 1.0 - tol / std::max(R, 1e-300)));
                    pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(angle / std::max(max_step, 1e-12))));
                    pieces = std::min<std::size_t>(pieces, 4096);
                }
                for (std::size_t s = 1; s <= pieces; ++s) {
                    const double t = t0 + (t1 - t0) * static_cast<double>(s) / static_cast<double>(pieces);
                    const cplx v = m(p + t * (q - p));
                    if (std::abs(v - img.vertices.back()) > 0.0) img.vertices.push_back(v);
                }
                t0 = t1;
            }
        }
        if (img.vertices.size() > 1 && arc.closed()) img.vertices.back() = img.vertices.front();
        out.push_back(std::move(img));
    }
    return Compactum(std::move(out), K.label());
}

/// S_j: components in the closed upper half-plane are clamped to
/// Im z >= height, those in the closed lower half-plane to Im z <= -height.
/// A component crossing the real axis is outside the domain of S_j.
inline Compactum apply_split_clamp(const Compactum& K, double height) {
    std::vector<Arc> out;
    for (const auto& arc : K.components()) {
        if (arc.at_infinity) throw DomainError("clamp is undefined at infinity");
        const bool upper = std::all_of(arc.vertices.begin(), arc.vertices.end(), [](cplx v) { return v.imag() >= 0.0; });
        const bool lower = std::all_of(arc.vertices.begin(), arc.vertices.end(), [](cplx v) { return v.imag() <= 0.0; });
        if (!upper && !lower) throw DomainError("split clamp: component crosses the real axis");
        const auto m = upper ? MapSpec::halfplane_clamp_upper(height) : MapSpec::halfplane_clamp_lower(height);
        const auto img = apply_map(Compactum({arc}), m);
        out.push_back(img.components().front());
    }
    return Compactum(std::move(out), K.label());
}

// ---------------------------------------------------------------------------
// Named sets

/// Branch points of the four-point counterexample function.
struct BranchSquare {
    static constexpr cplx a1{-2.0 / 16.0, 3.0 / 16.0};
    static constexpr cplx a2{2.0 / 16.0, 3.0 / 16.0};
    static constexpr cplx a3{-2.0 / 16.0, -1.0 / 16.0};
    static constexpr cplx a4{2.0 / 16.0, -1.0 / 16.0};
    static constexpr cplx center{0.0, 1.0 / 16.0};
};

enum class NamedSet { K_star, L, L_p, E_segment, E_k, vertical_pairing, segment, unit_circle };

struct NamedSetParams {
    int p = 4;
    double a = -1.0;
    double b = 1.0;
    double k = 1.0;
    double radius = 1.0;
    std::size_t circle_vertices = 1024;
};

inline Compactum circle(cplx center, double radius, std::size_t vertices = 1024) {
    Arc arc;
    for (std::size_t i = 0; i < vertices; ++i) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(vertices);
        arc.vertices.push_back(center + std::polar(radius, th));
    }
    arc.vertices.push_back(arc.vertices.front());
    return Compactum({arc}, "circle");
}

namespace detail {

inline std::optional<Arc> clip_above(cplx p, cplx q, double height) {
    if (p.imag() < height && q.imag() < height) return std::nullopt;
    if (p.imag() >= height && q.imag() >= height) return Arc::segment(p, q);
    const double t = (height - p.imag()) / (q.imag() - p.imag());
    const cplx x = p + t * (q - p);
    return p.imag() >= height ? Arc::segment(p, x) : Arc::segment(x, q);
}

}  // namespace detail

inline Compactum build_named(NamedSet name, const NamedSetParams& prm = {}) {
    using S = BranchSquare;
    switch (name) {
        case NamedSet::K_star:
            return Compactum({Arc::segment(S::a1, S::a2), Arc::segment(S::a3, S::a4)}, "K_star");
        case NamedSet::L:
            return Compactum({Arc::segment(S::a1, S::a4), Arc::segment(S::a2, S::a3)}, "L");
        case NamedSet::vertical_pairing:
            return Compactum({Arc::segment(S::a1, S::a3), Arc::segment(S::a2, S::a4)}, "vertical_pairing");
        case NamedSet::L_p: {
            if (prm.p != 4 && prm.p != 5) throw DomainError("L_p is defined for p in {4, 5}");
            const double h = std::ldexp(1.0, -prm.p);
            std::vector<Arc> arcs;
            for (auto [p, q] : {std::pair{S::a1, S::a4}, std::pair{S::a2, S::a3}})
                if (auto a = detail::clip_above(p, q, h)) arcs.push_back(*a);
            return Compactum(std::move(arcs), "L_" + std::to_string(prm.p));
        }
        case NamedSet::E_segment:
        case NamedSet::segment:
            if (!(prm.a < prm.b)) throw DomainError("segment needs a < b");
            return Compactum({Arc::segment({prm.a, 0.0}, {prm.b, 0.0})}, "segment");
        case NamedSet::E_k:
            if (!(prm.k > 0.0)) throw DomainError("E_k needs k > 0");
            if (!(prm.a < prm.b)) throw DomainError("segment needs a < b");
            return Compactum({Arc::segment({prm.k * prm.a, 0.0}, {prm.k * prm.b, 0.0})}, "E_k");
        case NamedSet::unit_circle:
            if (!(prm.radius > 0.0)) throw DomainError("circle radius must be positive");
            return circle({0.0, 0.0}, prm.radius, prm.circle_vertices);
    }
    throw DomainError("unknown named set");
}

/// Real-axis crossings of the polylines of K.
inline std::vector<cplx> real_axis_crossings(const Compactum& K) {
    std::vector<cplx> out;
    for (const auto& a : K.components()) {
        for (std::size_t i = 1; i < a.vertices.size(); ++i) {
            const cplx p = a.vertices[i - 1];
            const cplx q = a.vertices[i];
            if ((p.imag() <= 0.0 && q.imag() >= 0.0) || (p.imag() >= 0.0 && q.imag() <= 0.0)) {
                if (p.imag() == q.imag()) continue;
                const double t = -p.imag() / (q.imag() - p.imag());
                out.emplace_back(p.real() + t * (q.real() - p.real()), 0.0);
            }
        }
    }
    return out;
}

/// Intersection point of two segments, if any.
inline std::optional<cplx> segment_intersection(cplx p1, cplx p2, cplx q1, cplx q2) {
    const cplx r = p2 - p1;
    const cplx s = q2 - q1;
    const double denom = r.real() * s.imag() - r.imag() * s.real();
    const cplx qp = q1 - p1;
    if (denom == 0.0) return std::nullopt;
    const double t = (qp.real() * s.imag() - qp.imag() * s.real()) / denom;
    const double u = (qp.real() * r.imag() - qp.imag() * r.real()) / denom;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return std::nullopt;
    return p1 + t * r;
}

/// Smallest Euclidean distance between the finite parts of two compacta
/// (zero when polylines intersect).
inline double set_distance(const Compactum& A, const Compactum& B) {
    double best = std::numeric_limits<double>::infinity();
    auto pieces = [](const Arc& a) {
        std::vector<std::pair<cplx, cplx>> segs;
        if (a.vertices.size() == 1) segs.emplace_back(a.vertices[0], a.vertices[0]);
        for (std::size_t i = 1; i < a.vertices.size(); ++i) segs.emplace_back(a.vertices[i - 1], a.vertices[i]);
        return segs;
    };
    for (const auto& a : A.components()) {
        if (a.at_infinity) continue;
        for (const auto& b : B.components()) {
            if (b.at_infinity) continue;
            for (const auto& [p1, p2] : pieces(a)) {
                for (const auto& [q1, q2] : pieces(b)) {
                    if (segment_intersection(p1, p2, q1, q2)) return 0.0;
                    best = std::min({best, detail::point_segment_distance(p1, q1, q2), detail::point_segment_distance(p2, q1, q2),
                                     detail::point_segment_distance(q1, p1, p2), detail::point_segment_distance(q2, p1, p2)});
                }
            }
        }
    }
    return best;
}

}  // namespace capmin

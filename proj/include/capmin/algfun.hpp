#pragma once

// Algebraic functions c * prod (z - a_l)^{e_l} with half-integer exponents:
// branch tracking along paths, expansions at infinity and at finite points,
// and the admissibility test for cut sets.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "capmin/geometry.hpp"

namespace capmin {

/// Exponents are stored doubled (1 means 1/2). Their sum must be an integer
/// s <= 0, so that f(z) ~ c z^s at infinity and the branch near infinity is
/// pinned by c.
class BranchedFunction {
public:
    BranchedFunction(std::vector<cplx> branch_points, std::vector<int> twice_exponents, cplx leading = 1.0,
                     std::string name = "")
        : a_(std::move(branch_points)), e2_(std::move(twice_exponents)), c_(leading), name_(std::move(name)) {
        if (a_.size() != e2_.size()) throw DomainError("branch points and exponents differ in length");
        if (a_.empty()) throw DomainError("branched function without branch points");
        if (c_ == cplx(0.0, 0.0)) throw DomainError("normalization value must be nonzero");
        const int s = std::accumulate(e2_.begin(), e2_.end(), 0);
        if (s % 2 != 0) throw DomainError("exponent sum must be an integer");
        if (s > 0) throw DomainError("exponent sum must be <= 0 (f holomorphic at infinity)");
        for (std::size_t i = 0; i < a_.size(); ++i)
            for (std::size_t j = i + 1; j < a_.size(); ++j)
                if (a_[i] == a_[j]) throw DomainError("repeated branch point");
    }

    /// The counterexample function sqrt((z-a1)(z-a2)/((z-a3)(z-a4))), f(infinity) = 1.
    static BranchedFunction fstar() {
        using S = BranchSquare;
        return BranchedFunction({S::a1, S::a2, S::a3, S::a4}, {1, 1, -1, -1}, 1.0, "fstar");
    }

    /// (1 - 1/z^2)^{-1/2} = z (z-1)^{-1/2} (z+1)^{-1/2}.
    static BranchedFunction reference_arcsine() {
        return BranchedFunction({cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(-1.0, 0.0)}, {2, -1, -1}, 1.0, "reference");
    }

    /// c * prod (z - zeros) / prod (z - poles).
    static BranchedFunction rational(const std::vector<cplx>& zeros, const std::vector<cplx>& poles, cplx c = 1.0) {
        std::vector<cplx> pts;
        std::vector<int> ex;
        auto add = [&](cplx z, int e) {
            for (std::size_t i = 0; i < pts.size(); ++i)
                if (pts[i] == z) {
                    ex[i] += e;
                    return;
                }
            pts.push_back(z);
            ex.push_back(e);
        };
        for (auto z : zeros) add(z, 2);
        for (auto p : poles) add(p, -2);
        return BranchedFunction(pts, ex, c, "rational");
    }

    const std::vector<cplx>& branch_points() const { return a_; }
    const std::vector<int>& twice_exponents() const { return e2_; }
    cplx leading() const { return c_; }
    const std::string& name() const { return name_; }
    int order_at_infinity() const { return -std::accumulate(e2_.begin(), e2_.end(), 0) / 2; }

    double exponent(std::size_t l) const { return 0.5 * e2_[l]; }
    bool is_branch_point(std::size_t l) const { return e2_[l] % 2 != 0; }

    /// Radius of a disk centered at 0 containing every branch point.
    double radius() const {
        double r = 0.0;
        for (auto a : a_) r = std::max(r, std::abs(a));
        return r;
    }

    /// Points treated as singular (branch points and poles).
    bool singular_at(std::size_t l) const { return e2_[l] % 2 != 0 || e2_[l] < 0; }

private:
    std::vector<cplx> a_;
    std::vector<int> e2_;
    cplx c_;
    std::string name_;
};

inline constexpr double branch_margin = 1e-6;

// ---------------------------------------------------------------------------
// Paths. A path is a polyline whose first vertex lies outside the disk of
// radius 2 * radius() + 1; it is joined to infinity along the outward ray.

inline double far_radius(const BranchedFunction& f) { return 2.0 * f.radius() + 1.0; }

/// Straight in from infinity along the ray through z.
inline std::vector<cplx> radial_path(const BranchedFunction& f, cplx z) {
    const double R = far_radius(f);
    if (std::abs(z) >= R) return {z};
    const cplx dir = std::abs(z) > 0.0 ? z / std::abs(z) : cplx(1.0, 0.0);
    return {dir * R, z};
}

/// From +infinity along the real axis to Re z, then vertically to z.
inline std::vector<cplx> real_axis_path(const BranchedFunction& f, cplx z) {
    const double R = std::max(far_radius(f), std::abs(z.real()) + 1.0);
    std::vector<cplx> p{cplx(R, 0.0), cplx(z.real(), 0.0)};
    if (z.imag() != 0.0) p.push_back(z);
    return p;
}

namespace detail {

inline bool segment_hits(const Compactum& K, cplx p, cplx q) {
    for (const auto& a : K.components()) {
        if (a.at_infinity) continue;
        if (a.vertices.size() == 1) {
            if (point_segment_distance(a.vertices[0], p, q) == 0.0) return true;
            continue;
        }
        for (std::size_t i = 1; i < a.vertices.size(); ++i)
            if (segment_intersection(p, q, a.vertices[i - 1], a.vertices[i])) return true;
    }
    return false;
}

inline double path_clearance(const BranchedFunction& f, cplx p, cplx q) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < f.branch_points().size(); ++l)
        if (f.is_branch_point(l)) d = std::min(d, point_segment_distance(f.branch_points()[l], p, q));
    return d;
}

}  // namespace detail

/// A ray from infinity to z that does not cross K (the branch off K). The
/// direction away from the centroid of K is tried first, then 32 others.
inline std::vector<cplx> path_avoiding(const BranchedFunction& f, const Compactum& K, cplx z) {
    const double R = far_radius(f) + std::abs(z) + K.diameter() + 1.0;
    cplx centroid = 0.0;
    const auto v = K.finite_vertices();
    for (auto x : v) centroid += x;
    if (!v.empty()) centroid /= static_cast<double>(v.size());
    std::vector<cplx> dirs;
    if (std::abs(z - centroid) > 0.0) dirs.push_back((z - centroid) / std::abs(z - centroid));
    for (int i = 0; i < 32; ++i) dirs.push_back(std::polar(1.0, 2.0 * std::numbers::pi * (i + 0.25) / 32.0));
    for (auto d : dirs) {
        const cplx far = z + d * R;
        if (detail::segment_hits(K, far, z)) continue;
        if (detail::path_clearance(f, far, z) < branch_margin) continue;
        return {far, z};
    }
    throw DomainError("path_avoiding: no straight escape from z avoids the compactum");
}

namespace detail {

/// Tracks continuous arguments of z - a_l along the path and returns the
/// winding integers k_l with arg = Arg(z - a_l) + 2 pi k_l at the end.
inline std::vector<long> track_windings(const BranchedFunction& f, const std::vector<cplx>& path) {
    if (path.empty()) throw DomainError("empty continuation path");
    const auto& a = f.branch_points();
    const cplx z0 = path.front();
    if (std::abs(z0) < far_radius(f) * (1.0 - 1e-12)) throw DomainError("continuation path must start far from the branch points");
    for (std::size_t i = 1; i < path.size(); ++i)
        if (path_clearance(f, path[i - 1], path[i]) < branch_margin)
            throw DomainError("continuation path passes within the branch-point margin");
    if (path.size() == 1) {
        for (std::size_t l = 0; l < a.size(); ++l)
            if (f.singular_at(l) && std::abs(z0 - a[l]) < branch_margin) throw DomainError("evaluation at a branch point");
    }
    std::vector<double> theta(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) theta[l] = std::arg(z0) + std::arg(1.0 - a[l] / z0);

    for (std::size_t i = 1; i < path.size(); ++i) {
        cplx p = path[i - 1];
        const cplx q = path[i];
        double t = 0.0;
        double h = 1.0;
        int guard = 0;
        while (t < 1.0) {
            if (++guard > 1 << 22) throw NumericalError("branch tracking did not terminate");
            const double t1 = std::min(1.0, t + h);
            const cplx nxt = path[i - 1] + t1 * (q - path[i - 1]);
            bool ok = true;
            std::vector<double> inc(a.size());
            for (std::size_t l = 0; l < a.size(); ++l) {
                if (!f.is_branch_point(l)) continue;
                inc[l] = std::arg((nxt - a[l]) / (p - a[l]));
                if (std::abs(inc[l]) >= 0.5 * std::numbers::pi) ok = false;
            }
            if (!ok) {
                h *= 0.5;
                continue;
            }
            for (std::size_t l = 0; l < a.size(); ++l) theta[l] += inc[l];
            p = nxt;
            t = t1;
            h = std::min(1.0, 2.0 * h);
        }
    }
    const cplx z = path.back();
    std::vector<long> k(a.size());
    for (std::size_t l = 0; l < a.size(); ++l)
        if (f.is_branch_point(l)) k[l] = std::lround((theta[l] - std::arg(z - a[l])) / (2.0 * std::numbers::pi));
    return k;
}

/// c * prod (z - a_l)^{e_l} on principal branches, times the sign implied
/// by the windings.
template <class Real>
complex_of<Real> assemble(const BranchedFunction& f, const complex_of<Real>& z, const std::vector<long>& k) {
    using C = complex_of<Real>;
    const auto& a = f.branch_points();
    C v = from_cplx<Real>(f.leading());
    long sign_flips = 0;
    for (std::size_t l = 0; l < a.size(); ++l) {
        const int e2 = f.twice_exponents()[l];
        const C d = z - from_cplx<Real>(a[l]);
        const C root = sqrt(d);
        const int reps = std::abs(e2);
        C term(Real(1));
        if (e2 % 2 == 0) {
            for (int r = 0; r < reps / 2; ++r) term *= d;
        } else {
            for (int r = 0; r < reps; ++r) term *= root;
            sign_flips += k[l];
        }
        v = e2 >= 0 ? v * term : v / term;
    }
    if (sign_flips % 2 != 0) v = -v;
    return v;
}

}  // namespace detail

/// Value of the branch reached by continuing f from infinity along path
/// (the path ends at z).
template <class Real = double>
complex_of<Real> eval_continued(const BranchedFunction& f, const complex_of<Real>& z, const std::vector<cplx>& path) {
    if (path.empty()) throw DomainError("empty continuation path");
    if (std::abs(to_cplx(z) - path.back()) > 1e-12 * (1.0 + std::abs(path.back())))
        throw DomainError("continuation path does not end at the evaluation point");
    for (std::size_t l = 0; l < f.branch_points().size(); ++l)
        if (f.singular_at(l) && std::abs(to_cplx(z) - f.branch_points()[l]) < branch_margin)
            throw DomainError("evaluation within the branch-point margin");
    const auto k = detail::track_windings(f, path);
    return detail::assemble<Real>(f, z, k);
}

inline cplx eval_continued(const BranchedFunction& f, cplx z, const std::vector<cplx>& path) {
    return eval_continued<double>(f, z, path);
}

/// Laurent coefficients c_0..c_{N-1} of f(z) = sum c_m z^{-m}, from
/// log f = log c + s log z + sum_l e_l log(1 - a_l/z) and the exp recursion.
template <class Real = double>
std::vector<complex_of<Real>> taylor_at_infinity(const BranchedFunction& f, std::size_t N) {
    using C = complex_of<Real>;
    if (N > 2 * 64 + 1) throw DomainError("taylor_at_infinity: N above 129");
    const auto& a = f.branch_points();
    std::vector<C> L(N + 1, C(Real(0)));  // L[m]: coefficient of u^m in sum e_l log(1 - a_l u)
    std::vector<C> pw(a.size(), C(Real(1)));
    std::vector<C> av;
    for (auto x : a) av.push_back(from_cplx<Real>(x));
    for (std::size_t m = 1; m <= N; ++m) {
        C s(Real(0));
        for (std::size_t l = 0; l < a.size(); ++l) {
            pw[l] *= av[l];
            s += pw[l] * Real(f.twice_exponents()[l]);
        }
        L[m] = -s / Real(2 * static_cast<double>(m));
    }
    std::vector<C> g(N + 1, C(Real(0)));
    g[0] = C(Real(1));
    for (std::size_t m = 1; m <= N; ++m) {
        C s(Real(0));
        for (std::size_t j = 1; j <= m; ++j) s += L[j] * g[m - j] * Real(static_cast<double>(j));
        g[m] = s / Real(static_cast<double>(m));
    }
    const std::size_t shift = static_cast<std::size_t>(f.order_at_infinity());
    const C c = from_cplx<Real>(f.leading());
    std::vector<C> out(N, C(Real(0)));
    for (std::size_t m = shift; m < N; ++m) out[m] = c * g[m - shift];
    return out;
}

/// Taylor coefficients of f(e + h) in h up to order N-1, given the value
/// f(e) of the chosen branch.
template <class Real = double>
std::vector<complex_of<Real>> taylor_at_point(const BranchedFunction& f, const complex_of<Real>& e,
                                              const complex_of<Real>& value, std::size_t N) {
    using C = complex_of<Real>;
    const auto& a = f.branch_points();
    std::vector<C> L(N, C(Real(0)));
    for (std::size_t l = 0; l < a.size(); ++l) {
        const C inv = C(Real(1)) / (e - from_cplx<Real>(a[l]));
        C pw(Real(1));
        for (std::size_t m = 1; m < N; ++m) {
            pw *= inv;
            const Real sg = (m % 2 == 1) ? Real(1) : Real(-1);
            L[m] += pw * (sg * Real(f.twice_exponents()[l]) / Real(2 * static_cast<double>(m)));
        }
    }
    std::vector<C> g(N, C(Real(0)));
    if (N == 0) return g;
    g[0] = value;
    for (std::size_t m = 1; m < N; ++m) {
        C s(Real(0));
        for (std::size_t j = 1; j <= m; ++j) s += L[j] * g[m - j] * Real(static_cast<double>(j));
        g[m] = s / Real(static_cast<double>(m));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Admissibility

struct AdmissibilityReport {
    bool admissible = false;
    bool intersects_E = false;
    bool branch_point_in_domain = false;
    bool nontrivial_monodromy = false;
    std::size_t holes_checked = 0;
    std::string reason;
};

/// K is admissible for (f, E) when K misses E and f continues single-valued
/// through every complement component of K that meets E. The complement is
/// rasterized over a box around K and the branch points; each component
/// reached by E must contain no branch point of odd order, and every piece
/// of the plane it separates must carry an integer exponent sum.
inline AdmissibilityReport admissibility_report(const Compactum& K, const BranchedFunction& f, const Compactum& E,
                                                std::size_t resolution = 400) {
    AdmissibilityReport rep;
    if (set_distance(K, E) <= 1e-14 * std::max(1.0, K.diameter())) {
        rep.intersects_E = true;
        rep.reason = "K meets E";
        return rep;
    }
    // bounding box of K and the branch points
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto grow = [&](cplx z) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    };
    for (auto z : K.finite_vertices()) grow(z);
    for (auto z : f.branch_points()) grow(z);
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    xmin -= 0.25 * span;
    xmax += 0.25 * span;
    ymin -= 0.25 * span;
    ymax += 0.25 * span;
    const std::size_t nx = resolution, ny = resolution;
    const double hx = (xmax - xmin) / static_cast<double>(nx);
    const double hy = (ymax - ymin) / static_cast<double>(ny);
    const double thick = 0.75 * std::hypot(hx, hy);
    auto center = [&](std::size_t i, std::size_t j) {
        return cplx(xmin + (static_cast<double>(i) + 0.5) * hx, ymin + (static_cast<double>(j) + 0.5) * hy);
    };
    auto cell_of = [&](cplx z) -> std::optional<std::pair<std::size_t, std::size_t>> {
        const double fx = (z.real() - xmin) / hx, fy = (z.imag() - ymin) / hy;
        if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(nx) || fy >= static_cast<double>(ny)) return std::nullopt;
        return std::pair{static_cast<std::size_t>(fx), static_cast<std::size_t>(fy)};
    };

    std::vector<char> blocked(nx * ny, 0);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const cplx c = center(i, j);
            for (const auto& arc : K.components()) {
                if (arc.at_infinity) continue;
                bool hit = false;
                if (arc.vertices.size() == 1) hit = std::abs(c - arc.vertices[0]) <= thick;
                for (std::size_t v = 1; v < arc.vertices.size() && !hit; ++v)
                    hit = detail::point_segment_distance(c, arc.vertices[v - 1], arc.vertices[v]) <= thick;
                if (hit) {
                    blocked[i * ny + j] = 1;
                    break;
                }
            }
        }

    // 4-connected labelling of free cells; label 0 is the one touching the box border
    std::vector<int> label(nx * ny, -1);
    int nlabels = 0;
    auto flood = [&](std::size_t si, std::size_t sj, int lab, const std::vector<char>& wall, std::vector<int>& lbl, bool eight) {
        std::queue<std::pair<std::size_t, std::size_t>> qu;
        qu.push({si, sj});
        lbl[si * ny + sj] = lab;
        while (!qu.empty()) {
            auto [i, j] = qu.front();
            qu.pop();
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (!eight && di != 0 && dj != 0) continue;
                    const long ii = static_cast<long>(i) + di, jj = static_cast<long>(j) + dj;
                    if (ii < 0 || jj < 0 || ii >= static_cast<long>(nx) || jj >= static_cast<long>(ny)) continue;
                    const auto idx = static_cast<std::size_t>(ii) * ny + static_cast<std::size_t>(jj);
                    if (wall[idx] || lbl[idx] != -1) continue;
                    lbl[idx] = lab;
                    qu.push({static_cast<std::size_t>(ii), static_cast<std::size_t>(jj)});
                }
        }
    };
    // border first so that the unbounded component gets label 0
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j : {std::size_t{0}, ny - 1})
            if (!blocked[i * ny + j] && label[i * ny + j] == -1) flood(i, j, 0, blocked, label, false);
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i : {std::size_t{0}, nx - 1})
            if (!blocked[i * ny + j] && label[i * ny + j] == -1) flood(i, j, 0, blocked, label, false);
    nlabels = 1;
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (!blocked[i * ny + j] && label[i * ny + j] == -1) flood(i, j, nlabels++, blocked, label, false);

    // components reached by E
    std::vector<char> reached(static_cast<std::size_t>(nlabels), 0);
    if (E.contains_infinity()) reached[0] = 1;
    const double espacing = 0.5 * std::min(hx, hy);
    for (const auto& z : detail::dense_samples(E, espacing)) {
        if (z.is_infinite()) {
            reached[0] = 1;
            continue;
        }
        const auto c = cell_of(z.value());
        if (!c) {
            reached[0] = 1;
            continue;
        }
        const int lab = label[c->first * ny + c->second];
        if (lab >= 0) reached[static_cast<std::size_t>(lab)] = 1;
    }

    const auto& a = f.branch_points();
    for (int lab = 0; lab < nlabels; ++lab) {
        if (!reached[static_cast<std::size_t>(lab)]) continue;
        // branch points of odd order inside the domain
        for (std::size_t l = 0; l < a.size(); ++l) {
            if (!f.is_branch_point(l)) continue;
            const auto c = cell_of(a[l]);
            const int bl = c ? label[c->first * ny + c->second] : 0;
            if (bl == lab) {
                rep.branch_point_in_domain = true;
                rep.reason = "branch point inside a component meeting E";
                return rep;
            }
        }
        // pieces of the complement of this domain, 8-connected
        std::vector<char> wall(nx * ny, 0);
        for (std::size_t idx = 0; idx < nx * ny; ++idx) wall[idx] = (label[idx] == lab);
        std::vector<int> hole(nx * ny, -1);
        int nh = 0;
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                if (!wall[i * ny + j] && hole[i * ny + j] == -1) flood(i, j, nh++, wall, hole, true);
        std::vector<int> sum(static_cast<std::size_t>(nh), 0);
        for (std::size_t l = 0; l < a.size(); ++l) {
            const auto c = cell_of(a[l]);  // the box contains every branch point
            const int h = c ? hole[c->first * ny + c->second] : -1;
            if (h >= 0) sum[static_cast<std::size_t>(h)] += f.twice_exponents()[l];
        }
        rep.holes_checked += static_cast<std::size_t>(nh);
        for (int s : sum)
            if (s % 2 != 0) {
                rep.nontrivial_monodromy = true;
                rep.reason = "a loop in a component meeting E has nontrivial monodromy";
                return rep;
            }
    }
    rep.admissible = true;
    rep.reason = "admissible";
    return rep;
}

inline bool admissibility_check(const Compactum& K, const BranchedFunction& f, const Compactum& E) {
    return admissibility_report(K, f, E).admissible;
}

}  // namespace capmin

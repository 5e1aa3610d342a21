#pragma once

// Scripted pipelines: the counterexample over the scaled interval E_k, a
// demonstration of pole attraction for classical Pade approximants, the
// psi_k field bounds and a three-point Chebotarev solver.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "capmin/algfun.hpp"
#include "capmin/pade.hpp"
#include "capmin/potential.hpp"

namespace capmin {

enum class ExperimentKind { stahl_demo, counterexample, chebotarev, field_bounds };

inline std::string to_string(ExperimentKind e) {
    switch (e) {
        case ExperimentKind::stahl_demo: return "stahl_demo";
        case ExperimentKind::counterexample: return "counterexample";
        case ExperimentKind::chebotarev: return "chebotarev";
        case ExperimentKind::field_bounds: return "field_bounds";
    }
    return "";
}

inline ExperimentKind experiment_from_string(const std::string& s) {
    if (s == "stahl_demo") return ExperimentKind::stahl_demo;
    if (s == "counterexample") return ExperimentKind::counterexample;
    if (s == "chebotarev") return ExperimentKind::chebotarev;
    if (s == "field_bounds") return ExperimentKind::field_bounds;
    throw DomainError("unknown experiment '" + s + "'");
}

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::counterexample;
    int k = 64;
    int n = 20;
    MeasurePreset mu_preset = MeasurePreset::chebyshev;
    int m = 400;
    Precision precision = Precision::extended;
    long seed = 0;
    std::vector<int> orders;         // Pade orders; empty selects the experiment default
    std::vector<int> ks;             // field_bounds scales; empty selects {4, 16, 64, 256}
    int fekete_n = 32;
    std::vector<cplx> points;        // chebotarev input
    int grid = 200;                  // counterexample grid diagnostic resolution

    void validate() const {
        if (k < 1) throw DomainError("config: k must be >= 1");
        if (n < 1 || n > 64) throw DomainError("config: n must lie in [1, 64]");
        if (m < 100) throw DomainError("config: m must be >= 100");
        if (fekete_n < 2) throw DomainError("config: fekete_n must be >= 2");
        for (int o : orders)
            if (o < 1 || o > 64) throw DomainError("config: orders must lie in [1, 64]");
        for (int x : ks)
            if (x < 1) throw DomainError("config: ks must be >= 1");
        if (experiment == ExperimentKind::chebotarev && !points.empty() && points.size() != 3)
            throw DomainError("config: chebotarev needs exactly 3 points");
        if (grid < 2) throw DomainError("config: grid must be >= 2");
    }
};

struct CapacitySummary {
    double value = 0.0;
    std::string method;
    std::size_t n_or_m = 0;
    double energy = 0.0;
    double robin = 0.0;
    bool converged = true;
};

inline CapacitySummary summarize(const CapacityEstimate& e) {
    return {e.value, to_string(e.method), e.n_or_m, e.energy, e.robin, e.converged};
}

struct NamedDistance {
    std::string name;
    std::string first, second;  // the two objects compared
    double value = 0.0;
};

struct Verdict {
    std::string name;
    bool value = false;
    std::string threshold;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<std::pair<std::string, CapacitySummary>> capacities;
    std::vector<std::pair<std::string, DiscreteMeasure>> pole_measures;
    std::vector<NamedDistance> distances;
    std::vector<Verdict> verdicts;
    std::vector<std::pair<std::string, double>> scalars;  // other reported numbers
    std::vector<std::string> notes;

    void distance(std::string name, std::string a, std::string b, double v) {
        distances.push_back({std::move(name), std::move(a), std::move(b), v});
    }
    void verdict(std::string name, bool v, std::string threshold) {
        verdicts.push_back({std::move(name), v, std::move(threshold)});
    }
    void scalar(std::string name, double v) { scalars.emplace_back(std::move(name), v); }

    std::optional<bool> find_verdict(const std::string& name) const {
        for (const auto& v : verdicts)
            if (v.name == name) return v.value;
        return std::nullopt;
    }
    std::optional<double> find_distance(const std::string& name) const {
        for (const auto& d : distances)
            if (d.name == name) return d.value;
        return std::nullopt;
    }
    std::optional<double> find_scalar(const std::string& name) const {
        for (const auto& s : scalars)
            if (s.first == name) return s.second;
        return std::nullopt;
    }
};

inline std::string fmt_int(long v) { return std::to_string(v); }

/// Convenience: a compactum made of isolated points.
inline Compactum point_set(const std::vector<cplx>& pts) {
    std::vector<Arc> arcs;
    for (auto z : pts) arcs.push_back(Arc::point(z));
    return Compactum(std::move(arcs));
}

// ---------------------------------------------------------------------------

/// Counterexample pipeline: multipoint Pade approximants of f* at quantile
/// nodes of E_k, their pole distributions inside the unit disk compared with
/// the equilibrium measures of L and K*, and the admissibility obstruction.
inline ExperimentReport run_counterexample(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::counterexample) throw DomainError("run_counterexample: wrong experiment kind");
    std::vector<int> orders = cfg.orders;
    if (orders.empty())
        for (int o : {8, 12, 16, 20})
            if (o <= cfg.n) orders.push_back(o);
    if (orders.empty() || orders.back() != cfg.n) orders.push_back(cfg.n);
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    if (cfg.precision == Precision::binary64 && orders.back() > 20)
        throw DomainError("counterexample: binary64 is unreliable above n = 20; rerun with precision \"extended\"");

    ExperimentReport rep;
    rep.config = cfg;
    const double k = cfg.k;
    const auto fstar = BranchedFunction::fstar();
    NamedSetParams prm;
    prm.k = k;
    const auto Ek = build_named(NamedSet::E_k, prm);
    const auto L = build_named(NamedSet::L);
    const auto Kstar = build_named(NamedSet::K_star);
    const auto m = static_cast<std::size_t>(cfg.m);

    const auto lamL = equilibrium_measure(L, m);
    const auto lamK = equilibrium_measure(Kstar, m);

    PadeOptions opt;
    opt.precision = cfg.precision;
    const std::vector<cplx> crossings{cplx(1.0 / 16.0, 0.0), cplx(-1.0 / 16.0, 0.0)};
    std::vector<double> rhoL, rhoK;
    PadeApproximant last;
    for (int n : orders) {
        const auto table = quantile_nodes(cfg.mu_preset, -k, k, static_cast<std::size_t>(n));
        auto R = multipoint_pade(fstar, table, static_cast<std::size_t>(n), opt);
        const std::string tag = "n=" + fmt_int(n);
        if (R.effective_poles.empty()) throw NumericalError("counterexample: no effective poles at " + tag);
        const auto nu = zero_counting(R.effective_poles);
        rep.pole_measures.emplace_back("poles " + tag, nu);
        std::size_t inside = 0;
        double dmin = std::numeric_limits<double>::infinity();
        for (auto p : R.effective_poles) {
            if (std::abs(p) <= 1.0) ++inside;
            for (auto c : crossings) dmin = std::min(dmin, std::abs(p - c));
        }
        rep.scalar("poles in D " + tag, static_cast<double>(inside));
        rep.scalar("poles outside D " + tag, static_cast<double>(R.effective_poles.size() - inside));
        rep.scalar("cancelled pole-zero pairs " + tag, static_cast<double>(R.common_roots.size()));
        rep.scalar("relative defect " + tag, R.residual);
        rep.scalar("sigma_min " + tag, R.sigma_min);
        rep.scalar("sigma_next " + tag, R.sigma_next);
        rep.distance("min pole distance to +-1/16 " + tag, "poles " + tag, "{+1/16, -1/16}", dmin);
        const auto nuD = restrict_to_disk(nu, 1.0);
        if (!nuD) throw NumericalError("counterexample: no poles in the unit disk at " + tag);
        rhoL.push_back(weak_star_distance(*nuD, lamL).value);
        rhoK.push_back(weak_star_distance(*nuD, lamK).value);
        rep.distance("rho to lambda_L " + tag, "poles in D " + tag, "lambda_L", rhoL.back());
        rep.distance("rho to lambda_K* " + tag, "poles in D " + tag, "lambda_K*", rhoK.back());
        last = std::move(R);
    }
    const std::string final_tag = "n=" + fmt_int(orders.back());

    bool monotone = true;
    for (std::size_t i = 1; i < rhoL.size(); ++i) monotone = monotone && rhoL[i] < rhoL[i - 1];
    rep.verdict("rho to lambda_L decreasing in n", monotone, "strict decrease over orders");
    const double dfinal = *rep.find_distance("min pole distance to +-1/16 " + final_tag);
    const bool near = dfinal < 0.1;
    rep.verdict("pole within 0.1 of +-1/16 at final n", near, "< 0.1");
    const bool dich = rhoL.back() < rhoK.back();
    rep.verdict("poles closer to lambda_L than to lambda_K*", dich, "rho_L < rho_K* at final n");

    const bool admL = admissibility_check(L, fstar, Ek);
    const bool admK = admissibility_check(Kstar, fstar, Ek);
    rep.verdict("L admissible for (f*, E_k)", admL, "expected false: L meets E_k at +-1/16");
    rep.verdict("K* admissible for (f*, E_k)", admK, "expected true");
    rep.verdict("tension", near && !admL, "poles approach +-1/16 and no admissible compactum contains them");

    // capacities under the field psi_k
    const auto psi = ExternalField::preset_scaled(cfg.mu_preset, k);
    const auto capK0 = energy_capacity(Kstar, ExternalField::zero(), m);
    const auto capKe = energy_capacity(Kstar, psi, m);
    const auto capKf = fekete_capacity(Kstar, psi, static_cast<std::size_t>(cfg.fekete_n));
    const auto capLe = energy_capacity(L, psi, m);
    const auto capLf = fekete_capacity(L, psi, static_cast<std::size_t>(cfg.fekete_n));
    rep.capacities.emplace_back("K* zero field energy", summarize(capK0));
    rep.capacities.emplace_back("K* psi_k energy", summarize(capKe));
    rep.capacities.emplace_back("K* psi_k fekete", summarize(capKf));
    rep.capacities.emplace_back("L psi_k energy", summarize(capLe));
    rep.capacities.emplace_back("L psi_k fekete", summarize(capLf));
    const double disk_bound = std::sqrt(2.0) / 8.0;
    rep.verdict("cap(K*) <= 2^-3 sqrt 2", capK0.value <= disk_bound, "<= 0.17678");
    rep.verdict("cap_psi(K*) < 0.18", std::max(capKe.value, capKf.value) < 0.18, "< 0.18, both estimators");

    // orthogonality against Psi = 1/omega, omega over nodes with |e| > sqrt k
    {
        const auto table = quantile_nodes(cfg.mu_preset, -k, k, static_cast<std::size_t>(orders.back()));
        std::vector<cplx> far;
        for (const auto& e : table.nodes())
            if (std::abs(e.value()) > std::sqrt(k)) far.push_back(e.value());
        const auto omega = Polynomial::from_roots(far);
        const long nstar = static_cast<long>(far.size());
        const long nmax = nstar - orders.back() - 2;
        rep.scalar("nodes beyond sqrt k", static_cast<double>(nstar));
        if (nmax >= 0) {
            try {
                const auto orth = orthogonality_residuals(last.denominator, omega, fstar, L, static_cast<std::size_t>(nmax));
                rep.scalar("orthogonality max relative residual", orth.max_relative);
                rep.scalar("orthogonality nu_max", static_cast<double>(nmax));
            } catch (const DomainError& e) {
                rep.notes.push_back(std::string("orthogonality residuals skipped: ") + e.what());
            }
        } else {
            rep.notes.push_back("orthogonality residuals skipped: n* - n - 2 < 0");
        }
    }

    // convergence-in-capacity diagnostic on a grid over D
    {
        const int G = cfg.grid;
        std::size_t counted = 0, bad2 = 0, bad4 = 0;
        for (int i = 0; i < G; ++i)
            for (int j = 0; j < G; ++j) {
                const cplx z(-1.0 + 2.0 * (i + 0.5) / G, -1.0 + 2.0 * (j + 0.5) / G);
                if (std::abs(z) > 1.0) continue;
                bool skip = false;
                for (auto p : last.poles)
                    if (std::abs(z - p) < 1e-2) skip = true;
                if (skip) continue;
                cplx fz;
                try {
                    fz = eval_continued(fstar, z, path_avoiding(fstar, L, z));
                } catch (const DomainError&) {
                    continue;
                }
                const double err = std::abs(last(z) - fz);
                ++counted;
                if (err > 1e-2) ++bad2;
                if (err > 1e-4) ++bad4;
            }
        rep.scalar("grid points evaluated", static_cast<double>(counted));
        rep.scalar("grid fraction |R_n - f_L| > 1e-2", counted ? static_cast<double>(bad2) / counted : 0.0);
        rep.scalar("grid fraction |R_n - f_L| > 1e-4", counted ? static_cast<double>(bad4) / counted : 0.0);
    }
    rep.notes.push_back("the limit measure of a minimizing sequence of admissible compacta is not computable; only the lambda_L side and the admissibility obstruction are shown");
    rep.notes.push_back("pole measures are restricted to the closed unit disk and renormalized before rho is taken; far poles are counted separately");
    return rep;
}

/// Poles of classical Pade approximants of (1 - 1/z^2)^{-1/2} and of f*,
/// with the capacity ranking of candidate cut sets for E = {infinity}.
inline ExperimentReport run_stahl_demo(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::stahl_demo) throw DomainError("run_stahl_demo: wrong experiment kind");
    std::vector<int> orders = cfg.orders.empty() ? std::vector<int>{6, 10, 16} : cfg.orders;
    std::sort(orders.begin(), orders.end());
    ExperimentReport rep;
    rep.config = cfg;
    const auto m = static_cast<std::size_t>(cfg.m);
    PadeOptions opt;
    opt.precision = cfg.precision;

    const auto ref = BranchedFunction::reference_arcsine();
    const auto arcsine = arcsine_measure(m);
    const auto segment = build_named(NamedSet::segment);
    for (int n : orders) {
        const auto R = classical_pade(ref, static_cast<std::size_t>(n), opt);
        const std::string tag = "reference n=" + fmt_int(n);
        const auto nu = zero_counting(R.effective_poles);
        rep.pole_measures.emplace_back("poles " + tag, nu);
        rep.distance("rho to arcsine " + tag, "poles " + tag, "arcsine", weak_star_distance(nu, arcsine).value);
        std::vector<ComplexPoint> pts(R.effective_poles.begin(), R.effective_poles.end());
        rep.distance("max pole distance to [-1,1] " + tag, "poles " + tag, "[-1,1]", max_distance_to(pts, segment));
        rep.scalar("effective order " + tag, static_cast<double>(R.effective_order));
    }
    const std::string last_ref = "reference n=" + fmt_int(orders.back());
    rep.verdict("rho(reference poles, arcsine) < 0.15", *rep.find_distance("rho to arcsine " + last_ref) < 0.15, "< 0.15 at the largest order");

    // candidates for E = {infinity}, zero field
    const std::vector<std::pair<std::string, Compactum>> cand{{"K*", build_named(NamedSet::K_star)},
                                                              {"L", build_named(NamedSet::L)},
                                                              {"vertical pairing", build_named(NamedSet::vertical_pairing)}};
    const auto fstar = BranchedFunction::fstar();
    const Compactum Einf({Arc::infinity()});
    std::string winner;
    double best = std::numeric_limits<double>::infinity();
    bool agree = true;
    std::vector<double> ce, cf;
    for (const auto& [name, K] : cand) {
        const auto e = energy_capacity(K, ExternalField::zero(), m);
        const auto f = fekete_capacity(K, ExternalField::zero(), static_cast<std::size_t>(cfg.fekete_n));
        rep.capacities.emplace_back(name + " energy", summarize(e));
        rep.capacities.emplace_back(name + " fekete", summarize(f));
        rep.verdict(name + " admissible for (f*, {inf})", admissibility_check(K, fstar, Einf), "expected true");
        ce.push_back(e.value);
        cf.push_back(f.value);
        if (e.value < best) {
            best = e.value;
            winner = name;
        }
    }
    const auto ie = static_cast<std::size_t>(std::min_element(ce.begin(), ce.end()) - ce.begin());
    const auto ifk = static_cast<std::size_t>(std::min_element(cf.begin(), cf.end()) - cf.begin());
    agree = ie == ifk;
    rep.verdict("estimators agree on the minimal candidate", agree, "same argmin");
    rep.verdict("minimal candidate is L", winner == "L", "argmin of energy capacity");
    rep.notes.push_back("minimal-capacity candidate: " + winner);

    const Compactum* win = nullptr;
    for (const auto& c : cand)
        if (c.first == winner) win = &c.second;
    for (int n : orders) {
        const auto R = classical_pade(fstar, static_cast<std::size_t>(n), opt);
        const std::string tag = "f* n=" + fmt_int(n);
        rep.pole_measures.emplace_back("poles " + tag, zero_counting(R.effective_poles));
        std::vector<ComplexPoint> pts(R.effective_poles.begin(), R.effective_poles.end());
        rep.distance("max pole distance to " + winner + " " + tag, "poles " + tag, winner, max_distance_to(pts, *win));
        std::vector<Arc> parr;
        for (auto p : R.effective_poles) parr.push_back(Arc::point(p));
        rep.distance("Hausdorff(poles, " + winner + ") " + tag, "poles " + tag, winner, hausdorff_distance(Compactum(parr), *win));
        rep.scalar("effective order " + tag, static_cast<double>(R.effective_order));
    }
    const std::string last_f = "f* n=" + fmt_int(orders.back());
    rep.verdict("f* poles within 0.1 of the minimal candidate",
                *rep.find_distance("max pole distance to " + winner + " " + last_f) < 0.1, "< 0.1 at the largest order");
    rep.notes.push_back("pole proximity is the one-sided distance from poles to the set; the two-sided Hausdorff value is reported alongside");
    return rep;
}

/// max_D |psi_k| for growing k and the sandwich rho^-2 cap <= cap_psi <= rho^2 cap.
inline ExperimentReport run_field_bounds(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::field_bounds) throw DomainError("run_field_bounds: wrong experiment kind");
    const std::vector<int> ks = cfg.ks.empty() ? std::vector<int>{4, 16, 64, 256} : cfg.ks;
    ExperimentReport rep;
    rep.config = cfg;
    const auto m = static_cast<std::size_t>(cfg.m);
    const std::vector<std::pair<std::string, Compactum>> sets{{"K*", build_named(NamedSet::K_star)}, {"L", build_named(NamedSet::L)}};
    std::vector<CapacityEstimate> base;
    for (const auto& [name, K] : sets) {
        base.push_back(energy_capacity(K, ExternalField::zero(), m));
        rep.capacities.emplace_back(name + " zero field", summarize(base.back()));
    }
    std::vector<double> maxes;
    bool sandwich = true;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int k : ks) {
        const auto psi = ExternalField::preset_scaled(cfg.mu_preset, k);
        double mx = max_abs_on_disk(psi);
        for (const auto& b : base)
            for (const auto& p : b.cloud.points) mx = std::max(mx, std::abs(psi(p.z)));
        maxes.push_back(mx);
        const double rho = std::exp(mx);
        const std::string tag = "k=" + fmt_int(k);
        rep.scalar("max_D |psi_k| " + tag, mx);
        rep.scalar("rho_k " + tag, rho);
        for (std::size_t s = 0; s < sets.size(); ++s) {
            const auto w = energy_capacity(sets[s].second, psi, m);
            rep.capacities.emplace_back(sets[s].first + " psi_k " + tag, summarize(w));
            const double lo = base[s].value / (rho * rho), hi = base[s].value * rho * rho;
            const double slack = std::min(w.value - lo, hi - w.value);
            min_slack = std::min(min_slack, slack);
            sandwich = sandwich && slack >= 0.0;
        }
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < maxes.size(); ++i) decreasing = decreasing && maxes[i] < maxes[i - 1];
    rep.verdict("max_D |psi_k| strictly decreasing", decreasing, "strict decrease over k");
    rep.verdict("max_D |psi_k| < 0.05 at the largest k", maxes.back() < 0.05, "< 0.05");
    rep.verdict("sandwich holds", sandwich, "rho^-2 cap <= cap_psi <= rho^2 cap for every k and set");
    rep.scalar("sandwich minimum slack", min_slack);
    return rep;
}

// ---------------------------------------------------------------------------
// Chebotarev problem for three points

inline Compactum star(cplx c, const std::vector<cplx>& pts) {
    std::vector<Arc> arcs;
    for (auto p : pts)
        if (std::abs(p - c) > 0.0) arcs.push_back(Arc::segment(c, p));
    if (arcs.empty()) arcs.push_back(Arc::point(c));
    return Compactum(std::move(arcs), "star");
}

struct ChebotarevResult {
    cplx center;
    CapacityEstimate capacity;
    bool collinear = false;
    std::size_t evaluations = 0;
};

/// Coordinate descent over the center of the three-segment star, with the
/// energy capacity as objective. Collinear input returns the middle point.
inline ChebotarevResult chebotarev_center(const std::vector<cplx>& pts, std::size_t m) {
    if (pts.size() != 3) throw DomainError("chebotarev_center: need exactly 3 points");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (pts[i] == pts[j]) throw DomainError("chebotarev_center: points must be distinct");
    ChebotarevResult res;
    const cplx d1 = pts[1] - pts[0], d2 = pts[2] - pts[0];
    double diam = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) diam = std::max(diam, std::abs(pts[i] - pts[j]));
    const double cross = d1.real() * d2.imag() - d1.imag() * d2.real();
    if (std::abs(cross) <= 1e-12 * diam * diam) {
        // the point lying between the other two
        res.collinear = true;
        for (std::size_t i = 0; i < 3; ++i) {
            const cplx a = pts[(i + 1) % 3] - pts[i], b = pts[(i + 2) % 3] - pts[i];
            if ((a * std::conj(b)).real() <= 0.0) res.center = pts[i];
        }
        res.capacity = energy_capacity(star(res.center, pts), ExternalField::zero(), m);
        res.evaluations = 1;
        return res;
    }
    auto objective = [&](cplx c) {
        ++res.evaluations;
        return energy_capacity(star(c, pts), ExternalField::zero(), m);
    };
    cplx c = (pts[0] + pts[1] + pts[2]) / 3.0;
    auto best = objective(c);
    double h = 0.25 * diam;
    const double stop = 1e-3 * diam;
    const std::array<cplx, 4> dirs{cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
    while (h > stop) {
        bool moved = false;
        for (auto d : dirs) {
            const cplx trial = c + h * d;
            auto e = objective(trial);
            if (e.value < best.value) {
                best = std::move(e);
                c = trial;
                moved = true;
                break;
            }
        }
        if (!moved) h *= 0.5;
    }
    res.center = c;
    res.capacity = std::move(best);
    return res;
}

inline ExperimentReport run_chebotarev(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.experiment != ExperimentKind::chebotarev) throw DomainError("run_chebotarev: wrong experiment kind");
    std::vector<cplx> pts = cfg.points;
    if (pts.empty())
        for (int i = 0; i < 3; ++i) pts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / 3.0));
    ExperimentReport rep;
    rep.config = cfg;
    const auto m = static_cast<std::size_t>(cfg.m);
    const auto r = chebotarev_center(pts, m);
    rep.scalar("center re", r.center.real());
    rep.scalar("center im", r.center.imag());
    rep.scalar("objective evaluations", static_cast<double>(r.evaluations));
    rep.capacities.emplace_back("star at center", summarize(r.capacity));
    bool minimal = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto e = energy_capacity(star(pts[i], pts), ExternalField::zero(), m);
        rep.capacities.emplace_back("two-segment path through point " + fmt_int(static_cast<long>(i)), summarize(e));
        minimal = minimal && r.capacity.value <= e.value + 1e-12;
    }
    rep.verdict("center capacity <= every two-segment path", minimal, "<=");
    if (r.collinear) rep.notes.push_back("collinear input: the continuum is the segment spanned by the points");
    return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::counterexample: return run_counterexample(cfg);
        case ExperimentKind::stahl_demo: return run_stahl_demo(cfg);
        case ExperimentKind::field_bounds: return run_field_bounds(cfg);
        case ExperimentKind::chebotarev: return run_chebotarev(cfg);
    }
    throw DomainError("unknown experiment");
}

/// Random polyline from a1 to a point of the unit circle.
inline Compactum random_connector(std::mt19937_64& rng, int inner_vertices = 4) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const cplx start = BranchSquare::a1;
    const cplx end = std::polar(1.0, 2.0 * std::numbers::pi * U(rng));
    Arc arc;
    arc.vertices.push_back(start);
    for (int i = 1; i <= inner_vertices; ++i) {
        const double t = static_cast<double>(i) / (inner_vertices + 1);
        cplx v = start + t * (end - start) + 0.3 * cplx(U(rng) - 0.5, U(rng) - 0.5);
        if (std::abs(v) > 0.95) v *= 0.95 / std::abs(v);
        arc.vertices.push_back(v);
    }
    arc.vertices.push_back(end);
    return Compactum({arc}, "connector");
}

}  // namespace capmin

#pragma once

// JSON and CSV serialization, strict config parsing, content hashing and
// atomic result files.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "capmin/experiments.hpp"

namespace capmin {

using json = nlohmann::ordered_json;

inline constexpr const char* version_string = "capmin 1.0.0";

/// Invalid configuration: unknown fields, wrong types, values out of range.
struct ConfigError : DomainError {
    using DomainError::DomainError;
};

namespace io {

inline void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected a JSON object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items())
        if (!ok.count(key)) throw ConfigError(where + ": unknown field '" + key + "'");
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing field '" + std::string(key) + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(where + ": field '" + std::string(key) + "' has the wrong type");
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
    return j.contains(key) ? get<T>(j, key, where) : fallback;
}

// ---------------------------------------------------------------------------
// points, sets, measures

inline json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const ComplexPoint& z) {
    if (z.is_infinite()) return json{{"inf", true}};
    return to_json(z.value());
}

inline ComplexPoint point_from_json(const json& j, const std::string& where) {
    if (j.is_object() && j.contains("inf")) {
        require_keys(j, {"inf"}, where);
        if (!get<bool>(j, "inf", where)) throw ConfigError(where + ": 'inf' must be true");
        return ComplexPoint::infinity();
    }
    require_keys(j, {"re", "im"}, where);
    return ComplexPoint(cplx(get<double>(j, "re", where), get_or<double>(j, "im", 0.0, where)));
}

inline cplx finite_from_json(const json& j, const std::string& where) {
    const auto p = point_from_json(j, where);
    if (p.is_infinite()) throw ConfigError(where + ": point must be finite");
    return p.value();
}

inline json to_json(const Compactum& K) {
    json comps = json::array();
    for (const auto& a : K.components()) {
        json c = json::array();
        for (auto v : a.vertices) c.push_back(to_json(v));
        if (a.at_infinity) c.push_back(json{{"inf", true}});
        comps.push_back(std::move(c));
    }
    json j{{"components", comps}};
    j["label"] = K.label() ? json(*K.label()) : json(nullptr);
    return j;
}

inline Compactum compactum_from_json(const json& j) {
    const std::string where = "compactum";
    require_keys(j, {"components", "label"}, where);
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.empty()) throw ConfigError(where + ": 'components' must be a non-empty array");
    std::vector<Arc> arcs;
    for (const auto& c : comps) {
        if (!c.is_array() || c.empty()) throw ConfigError(where + ": each component is a non-empty array of points");
        Arc arc;
        for (const auto& p : c) {
            const auto z = point_from_json(p, where);
            if (z.is_infinite()) {
                if (c.size() != 1) throw ConfigError(where + ": infinity must be a component of its own");
                arc.at_infinity = true;
            } else {
                arc.vertices.push_back(z.value());
            }
        }
        arcs.push_back(std::move(arc));
    }
    std::optional<std::string> label;
    if (j.contains("label") && !j.at("label").is_null()) label = get<std::string>(j, "label", where);
    return Compactum(std::move(arcs), label);
}

inline json to_json(const DiscreteMeasure& nu) {
    json atoms = json::array();
    for (const auto& a : nu.atoms()) {
        json e = to_json(a.z);
        e["w"] = a.w;
        atoms.push_back(std::move(e));
    }
    return json{{"atoms", atoms}};
}

inline DiscreteMeasure measure_from_json(const json& j) {
    const std::string where = "measure";
    require_keys(j, {"atoms"}, where);
    const auto& atoms = j.at("atoms");
    if (!atoms.is_array() || atoms.empty()) throw ConfigError(where + ": 'atoms' must be a non-empty array");
    std::vector<Atom> out;
    for (const auto& a : atoms) {
        if (!a.is_object()) throw ConfigError(where + ": atom must be an object");
        const double w = get<double>(a, "w", where);
        json pt = a;
        pt.erase("w");
        out.push_back({point_from_json(pt, where), w});
    }
    return DiscreteMeasure(std::move(out));
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180: CRLF line ends, header row)

inline std::string csv_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline std::string measure_csv(const DiscreteMeasure& nu) {
    std::string s = "re,im,w\r\n";
    for (const auto& a : nu.atoms()) {
        if (a.z.is_infinite()) {
            s += "inf,inf," + csv_number(a.w) + "\r\n";
            continue;
        }
        s += csv_number(a.z.value().real()) + "," + csv_number(a.z.value().imag()) + "," + csv_number(a.w) + "\r\n";
    }
    return s;
}

inline std::string points_csv(const std::vector<cplx>& pts) {
    std::string s = "re,im\r\n";
    for (auto z : pts) s += csv_number(z.real()) + "," + csv_number(z.imag()) + "\r\n";
    return s;
}

// ---------------------------------------------------------------------------
// results

inline json to_json(const CapacityEstimate& e) {
    json j{{"value", e.value}, {"method", to_string(e.method)}, {"n_or_m", e.n_or_m}, {"energy", e.energy}, {"robin", e.robin}};
    j["converged"] = e.converged;
    j["degenerate"] = e.degenerate;
    if (e.transfinite_diameter) j["transfinite_diameter"] = *e.transfinite_diameter;
    return j;
}

inline json to_json(const CapacitySummary& e) {
    return json{{"value", e.value}, {"method", e.method}, {"n_or_m", e.n_or_m}, {"energy", e.energy}, {"robin", e.robin}};
}

inline json coeffs_json(const Polynomial& p) {
    json a = json::array();
    for (auto c : p.coefficients()) a.push_back(to_json(c));
    return a;
}

inline json points_json(const std::vector<cplx>& pts) {
    json a = json::array();
    for (auto z : pts) a.push_back(to_json(z));
    return a;
}

inline json to_json(const PadeApproximant& R) {
    return json{{"order", R.order},
                {"precision", std::string(to_string(R.precision))},
                {"scale", R.scale},
                {"numerator", coeffs_json(R.numerator)},
                {"denominator", coeffs_json(R.denominator)},
                {"residual", R.residual},
                {"sigma_min", R.sigma_min},
                {"sigma_next", R.sigma_next},
                {"sigma_max", R.sigma_max},
                {"rank_deficient", R.rank_deficient},
                {"degenerate", R.degenerate},
                {"root_backward_error", R.root_backward_error},
                {"poles", points_json(R.poles)},
                {"zeros", points_json(R.zeros)},
                {"common_roots", points_json(R.common_roots)},
                {"effective_poles", points_json(R.effective_poles)},
                {"effective_order", R.effective_order}};
}

inline json to_json(const BranchedFunction& f) {
    json e = json::array();
    for (int t : f.twice_exponents()) e.push_back(0.5 * t);
    return json{{"branch_points", points_json(f.branch_points())}, {"exponents", e}, {"normalization", to_json(f.leading())}};
}

inline BranchedFunction function_from_json(const json& j) {
    const std::string where = "function";
    require_keys(j, {"branch_points", "exponents", "normalization"}, where);
    const auto& bp = j.at("branch_points");
    const auto& ex = j.at("exponents");
    if (!bp.is_array() || !ex.is_array()) throw ConfigError(where + ": branch_points and exponents must be arrays");
    std::vector<cplx> pts;
    for (const auto& p : bp) pts.push_back(finite_from_json(p, where));
    std::vector<int> e2;
    for (const auto& e : ex) {
        if (!e.is_number()) throw ConfigError(where + ": exponents must be numbers");
        const double t = 2.0 * e.get<double>();
        if (t != std::round(t)) throw ConfigError(where + ": exponents must be half-integers");
        e2.push_back(static_cast<int>(t));
    }
    const cplx c = j.contains("normalization") ? finite_from_json(j.at("normalization"), where) : cplx(1.0, 0.0);
    return BranchedFunction(std::move(pts), std::move(e2), c, "custom");
}

// ---------------------------------------------------------------------------
// experiment configs and reports

inline json to_json(const ExperimentConfig& c) {
    json j{{"experiment", to_string(c.experiment)},
           {"k", c.k},
           {"n", c.n},
           {"mu_preset", to_string(c.mu_preset)},
           {"m", c.m},
           {"precision", c.precision == Precision::binary64 ? "double" : "extended"},
           {"seed", c.seed},
           {"orders", c.orders},
           {"ks", c.ks},
           {"fekete_n", c.fekete_n},
           {"points", points_json(c.points)},
           {"grid", c.grid}};
    return j;
}

inline ExperimentConfig config_from_json(const json& j) {
    const std::string where = "experiment config";
    require_keys(j, {"experiment", "k", "n", "mu_preset", "m", "precision", "seed", "orders", "ks", "fekete_n", "points", "grid"},
                 where);
    ExperimentConfig c;
    try {
        c.experiment = experiment_from_string(get<std::string>(j, "experiment", where));
        c.mu_preset = preset_from_string(get_or<std::string>(j, "mu_preset", "chebyshev", where));
        c.precision = precision_from_string(get_or<std::string>(j, "precision", "extended", where));
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
    }
    c.k = get_or<int>(j, "k", c.k, where);
    c.n = get_or<int>(j, "n", c.n, where);
    c.m = get_or<int>(j, "m", c.m, where);
    c.seed = get_or<long>(j, "seed", c.seed, where);
    c.orders = get_or<std::vector<int>>(j, "orders", {}, where);
    c.ks = get_or<std::vector<int>>(j, "ks", {}, where);
    c.fekete_n = get_or<int>(j, "fekete_n", c.fekete_n, where);
    c.grid = get_or<int>(j, "grid", c.grid, where);
    if (j.contains("points")) {
        if (!j.at("points").is_array()) throw ConfigError(where + ": 'points' must be an array");
        for (const auto& p : j.at("points")) c.points.push_back(finite_from_json(p, where));
    }
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

inline json to_json(const ExperimentReport& r) {
    json caps = json::array();
    for (const auto& [name, c] : r.capacities) caps.push_back(json{{"name", name}, {"estimate", to_json(c)}});
    json poles = json::array();
    for (const auto& [name, nu] : r.pole_measures) poles.push_back(json{{"name", name}, {"measure", to_json(nu)}});
    json dist = json::array();
    for (const auto& d : r.distances)
        dist.push_back(json{{"name", d.name}, {"between", json::array({d.first, d.second})}, {"value", d.value}});
    json verd = json::array();
    for (const auto& v : r.verdicts) verd.push_back(json{{"name", v.name}, {"value", v.value}, {"threshold", v.threshold}});
    json sc = json::array();
    for (const auto& [name, v] : r.scalars) sc.push_back(json{{"name", name}, {"value", v}});
    return json{{"experiment", to_string(r.config.experiment)},
                {"capacities", caps},
                {"pole_measures", poles},
                {"distances", dist},
                {"verdicts", verd},
                {"scalars", sc},
                {"notes", r.notes},
                {"provenance", json{{"config", to_json(r.config)}, {"version", version_string}}}};
}

// ---------------------------------------------------------------------------
// files

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return s;
}

inline std::string content_hash(const json& canonical) { return hex64(fnv1a(canonical.dump() + "\n" + version_string)); }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline json read_json(const std::filesystem::path& p) {
    try {
        return json::parse(read_file(p));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(p.string() + ": " + e.what());
    }
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + p.string());
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace io
}  // namespace capmin

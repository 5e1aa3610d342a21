#pragma once

// Command-line front end. Every invocation is reduced to a canonical request
// object; its content hash names the result directory, so unchanged requests
// are served from the cache.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "capmin/io.hpp"

namespace capmin::cli {

namespace fs = std::filesystem;

enum ExitCode { ok = 0, config_error = 2, numerical_failure = 3 };

// ---------------------------------------------------------------------------
// request interpretation

inline Compactum set_from_request(const json& req) {
    const std::string where = "request";
    if (req.contains("compactum")) return io::compactum_from_json(req.at("compactum"));
    const auto name = io::get<std::string>(req, "set", where);
    NamedSetParams prm;
    if (req.contains("params")) {
        const auto& p = req.at("params");
        io::require_keys(p, {"a", "b", "k", "p", "radius"}, "params");
        prm.a = io::get_or<double>(p, "a", prm.a, "params");
        prm.b = io::get_or<double>(p, "b", prm.b, "params");
        prm.k = io::get_or<double>(p, "k", prm.k, "params");
        prm.p = io::get_or<int>(p, "p", prm.p, "params");
        prm.radius = io::get_or<double>(p, "radius", prm.radius, "params");
    }
    static const std::vector<std::pair<std::string, NamedSet>> names{
        {"K_star", NamedSet::K_star},         {"L", NamedSet::L},           {"L_p", NamedSet::L_p},
        {"E_segment", NamedSet::E_segment},   {"E_k", NamedSet::E_k},       {"vertical", NamedSet::vertical_pairing},
        {"vertical_pairing", NamedSet::vertical_pairing}, {"segment", NamedSet::segment}, {"circle", NamedSet::unit_circle},
        {"unit_circle", NamedSet::unit_circle}};
    for (const auto& [n, s] : names)
        if (n == name) return build_named(s, prm);
    throw ConfigError("unknown set '" + name + "'");
}

inline ExternalField field_from_request(const json& req) {
    if (!req.contains("field")) return ExternalField::zero();
    const auto& f = req.at("field");
    io::require_keys(f, {"kind", "preset", "k", "measure"}, "field");
    const auto kind = io::get<std::string>(f, "kind", "field");
    if (kind == "zero") return ExternalField::zero();
    if (kind == "preset") {
        MeasurePreset p;
        try {
            p = preset_from_string(io::get_or<std::string>(f, "preset", "chebyshev", "field"));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("field: ") + e.what());
        }
        return ExternalField::preset_scaled(p, io::get_or<double>(f, "k", 64.0, "field"));
    }
    if (kind == "measure") return ExternalField::from_measure(io::measure_from_json(f.at("measure")));
    throw ConfigError("field: unknown kind '" + kind + "'");
}

inline Precision precision_of(const json& req) {
    try {
        return precision_from_string(io::get_or<std::string>(req, "precision", "double", "request"));
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

inline BranchedFunction function_from_request(const json& req) {
    const auto& f = req.at("function");
    if (f.is_string()) {
        const auto s = f.get<std::string>();
        if (s == "fstar") return BranchedFunction::fstar();
        if (s == "reference") return BranchedFunction::reference_arcsine();
        throw ConfigError("unknown function '" + s + "'");
    }
    return io::function_from_json(f);
}

// ---------------------------------------------------------------------------
// commands; each validates its request fully before computing

struct Output {
    json result;
    std::vector<std::pair<std::string, std::string>> files;  // extra files (name, content)
};

inline void check_positive(const json& req, const char* key, long fallback, long min, const char* cmd) {
    const long v = io::get_or<long>(req, key, fallback, cmd);
    if (v < min) throw ConfigError(std::string(cmd) + ": '" + key + "' must be >= " + std::to_string(min));
}

inline Output run_capacity(const json& req) {
    io::require_keys(req, {"set", "params", "compactum", "method", "n", "m", "field"}, "capacity");
    const auto method = io::get_or<std::string>(req, "method", "both", "capacity");
    if (method != "energy" && method != "fekete" && method != "both") throw ConfigError("capacity: method must be energy, fekete or both");
    check_positive(req, "n", 32, 2, "capacity");
    check_positive(req, "m", 400, 2, "capacity");
    const auto K = set_from_request(req);
    const auto field = field_from_request(req);
    Output out;
    out.result["estimates"] = json::array();
    if (method != "fekete") {
        const auto e = energy_capacity(K, field, io::get_or<std::size_t>(req, "m", 400, "capacity"));
        out.result["estimates"].push_back(io::to_json(e));
        if (e.measure) out.files.emplace_back("energy_measure.csv", io::measure_csv(*e.measure));
    }
    if (method != "energy") {
        const auto e = fekete_capacity(K, field, io::get_or<std::size_t>(req, "n", 32, "capacity"));
        out.result["estimates"].push_back(io::to_json(e));
        if (e.measure) out.files.emplace_back("fekete_points.csv", io::measure_csv(*e.measure));
    }
    return out;
}

inline Output run_equilibrium(const json& req) {
    io::require_keys(req, {"set", "params", "compactum", "m"}, "equilibrium");
    check_positive(req, "m", 400, 2, "equilibrium");
    const auto K = set_from_request(req);
    const auto m = io::get_or<std::size_t>(req, "m", 400, "equilibrium");
    const auto e = energy_capacity(K, ExternalField::zero(), m);
    Output out;
    out.result["capacity"] = io::to_json(e);
    if (e.measure) {
        out.result["measure"] = io::to_json(*e.measure);
        out.files.emplace_back("equilibrium.csv", io::measure_csv(*e.measure));
    }
    return out;
}

inline Output run_balayage(const json& req) {
    io::require_keys(req, {"set", "params", "compactum", "m", "measure"}, "balayage");
    check_positive(req, "m", 400, 2, "balayage");
    if (!req.contains("measure")) throw ConfigError("balayage: missing field 'measure'");
    const auto K = set_from_request(req);
    const auto mu = io::measure_from_json(req.at("measure"));
    const auto nu = balayage(mu, K, io::get_or<std::size_t>(req, "m", 400, "balayage"));
    Output out;
    out.result["measure"] = io::to_json(nu);
    out.files.emplace_back("balayage.csv", io::measure_csv(nu));
    return out;
}

inline Output run_pade(const json& req) {
    io::require_keys(req, {"function", "mode", "order", "precision", "nodes"}, "pade");
    if (!req.contains("function")) throw ConfigError("pade: missing field 'function'");
    const auto mode = io::get_or<std::string>(req, "mode", "classical", "pade");
    if (mode != "classical" && mode != "multipoint") throw ConfigError("pade: mode must be classical or multipoint");
    const auto n = io::get<long>(req, "order", "pade");
    if (n < 1 || n > 64) throw ConfigError("pade: order must lie in [1, 64]");
    const auto f = function_from_request(req);
    PadeOptions opt;
    opt.precision = precision_of(req);
    PadeApproximant R;
    if (mode == "classical") {
        R = classical_pade(f, static_cast<std::size_t>(n), opt);
    } else {
        json nodes = req.contains("nodes") ? req.at("nodes") : json::object();
        io::require_keys(nodes, {"preset", "a", "b"}, "nodes");
        MeasurePreset p;
        try {
            p = preset_from_string(io::get_or<std::string>(nodes, "preset", "chebyshev", "nodes"));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("nodes: ") + e.what());
        }
        const auto table = quantile_nodes(p, io::get_or<double>(nodes, "a", -64.0, "nodes"), io::get_or<double>(nodes, "b", 64.0, "nodes"),
                                          static_cast<std::size_t>(n));
        R = multipoint_pade(f, table, static_cast<std::size_t>(n), opt);
    }
    Output out;
    out.result["function"] = io::to_json(f);
    out.result["approximant"] = io::to_json(R);
    out.files.emplace_back("poles.csv", io::points_csv(R.poles));
    out.files.emplace_back("zeros.csv", io::points_csv(R.zeros));
    return out;
}

inline Output run_roots(const json& req) {
    io::require_keys(req, {"coefficients", "precision"}, "roots");
    if (!req.contains("coefficients") || !req.at("coefficients").is_array())
        throw ConfigError("roots: 'coefficients' must be an array of points (ascending powers)");
    std::vector<cplx> c;
    for (const auto& x : req.at("coefficients")) c.push_back(io::finite_from_json(x, "roots"));
    const Polynomial P(c);
    if (P.degree() < 1) throw ConfigError("roots: polynomial of degree >= 1 required");
    const auto prec = precision_of(req);
    const auto roots = poly_roots(P, prec);
    Output out;
    out.result["degree"] = P.degree();
    out.result["roots"] = io::points_json(roots);
    out.result["backward_error"] = backward_error(P, roots);
    out.files.emplace_back("roots.csv", io::points_csv(roots));
    return out;
}

inline std::string slug(const std::string& s) {
    std::string o;
    for (char ch : s) {
        if (std::isalnum(static_cast<unsigned char>(ch))) o += ch;
        else if (!o.empty() && o.back() != '_') o += '_';
    }
    while (!o.empty() && o.back() == '_') o.pop_back();
    return o;
}

inline Output run_experiment_request(const json& req) {
    const auto cfg = io::config_from_json(req);
    const auto rep = run_experiment(cfg);
    Output out;
    out.result = io::to_json(rep);
    for (const auto& [name, nu] : rep.pole_measures) out.files.emplace_back(slug(name) + ".csv", io::measure_csv(nu));
    return out;
}

inline Output run_command(const std::string& cmd, const json& req) {
    if (cmd == "capacity") return run_capacity(req);
    if (cmd == "equilibrium") return run_equilibrium(req);
    if (cmd == "balayage") return run_balayage(req);
    if (cmd == "pade") return run_pade(req);
    if (cmd == "roots") return run_roots(req);
    if (cmd == "experiment") return run_experiment_request(req);
    throw ConfigError("unknown command '" + cmd + "'");
}

/// Canonical request: experiment configs are normalized so that equivalent
/// files hash identically.
inline json canonical(const std::string& cmd, const json& req) {
    if (cmd == "experiment") return io::to_json(io::config_from_json(req));
    return req;
}

// ---------------------------------------------------------------------------
// summaries

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

inline std::string summary(const std::string& cmd, const json& result) {
    std::string s = cmd + ":";
    if (cmd == "capacity") {
        for (const auto& e : result.at("estimates")) s += " " + e.at("method").get<std::string>() + "=" + fmt(e.at("value").get<double>());
    } else if (cmd == "equilibrium") {
        s += " cap=" + fmt(result.at("capacity").at("value").get<double>());
        if (result.contains("measure")) s += " atoms=" + std::to_string(result.at("measure").at("atoms").size());
    } else if (cmd == "balayage") {
        s += " atoms=" + std::to_string(result.at("measure").at("atoms").size());
    } else if (cmd == "pade") {
        const auto& R = result.at("approximant");
        s += " order=" + std::to_string(R.at("order").get<long>()) + " effective=" + std::to_string(R.at("effective_order").get<long>()) +
             " residual=" + fmt(R.at("residual").get<double>());
        if (R.at("degenerate").get<bool>()) s += " degenerate";
    } else if (cmd == "roots") {
        s += " degree=" + std::to_string(result.at("degree").get<long>()) + " backward_error=" + fmt(result.at("backward_error").get<double>());
    } else if (cmd == "experiment") {
        s += " " + result.at("experiment").get<std::string>();
        std::size_t pass = 0, total = 0;
        for (const auto& v : result.at("verdicts")) {
            ++total;
            pass += v.at("value").get<bool>() ? 1 : 0;
        }
        s += " verdicts " + std::to_string(pass) + "/" + std::to_string(total) + " true";
        for (const auto& v : result.at("verdicts"))
            if (v.at("name") == "tension" || v.at("name") == "poles closer to lambda_L than to lambda_K*")
                s += "; " + v.at("name").get<std::string>() + "=" + (v.at("value").get<bool>() ? "true" : "false");
    }
    return s;
}

// ---------------------------------------------------------------------------
// persistence

inline fs::path results_root(const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    if (const char* env = std::getenv("CAPMIN_RESULTS"); env && *env) return env;
    return "results";
}

/// Writes all files into a private temporary directory, then renames it
/// into place; a concurrent writer that wins the rename is left untouched.
inline void publish(const fs::path& root, const std::string& hash, const json& request, const std::string& cmd, const Output& out) {
    static std::atomic<unsigned> counter{0};
    fs::create_directories(root);
    const fs::path tmp = root / (".tmp-" + hash + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(tmp);
    try {
        json full{{"command", cmd}, {"version", version_string}, {"request", request}, {"result", out.result}};
        io::write_file(tmp / "result.json", io::dump(full));
        for (const auto& [name, content] : out.files) io::write_file(tmp / name, content);
        std::error_code ec;
        fs::rename(tmp, root / hash, ec);
        if (ec) fs::remove_all(tmp);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(tmp, ec);
        throw;
    }
}

struct RunResult {
    fs::path dir;
    bool cached = false;
    std::string line;
};

inline RunResult execute(const std::string& cmd, const json& request, const fs::path& root) {
    const json canon = canonical(cmd, request);
    const std::string hash = io::content_hash(json{{"command", cmd}, {"request", canon}});
    RunResult r;
    r.dir = root / hash;
    const auto file = r.dir / "result.json";
    if (fs::exists(file)) {
        r.cached = true;
        r.line = summary(cmd, io::read_json(file).at("result"));
        return r;
    }
    const auto out = run_command(cmd, canon);
    publish(root, hash, canon, cmd, out);
    r.line = summary(cmd, out.result);
    return r;
}

/// Detailed listing of a stored result.
inline std::string report_text(const fs::path& dir) {
    const auto j = io::read_json(dir / "result.json");
    const auto cmd = j.at("command").get<std::string>();
    const auto& res = j.at("result");
    std::string s = summary(cmd, res) + "\n";
    if (cmd == "experiment") {
        for (const auto& c : res.at("capacities"))
            s += "  capacity  " + c.at("name").get<std::string>() + " = " + fmt(c.at("estimate").at("value").get<double>()) + "\n";
        for (const auto& d : res.at("distances"))
            s += "  distance  " + d.at("name").get<std::string>() + " = " + fmt(d.at("value").get<double>()) + "\n";
        for (const auto& v : res.at("verdicts"))
            s += "  verdict   " + v.at("name").get<std::string>() + " = " + (v.at("value").get<bool>() ? "true" : "false") + "  (" +
                 v.at("threshold").get<std::string>() + ")\n";
        for (const auto& c : res.at("scalars")) s += "  scalar    " + c.at("name").get<std::string>() + " = " + fmt(c.at("value").get<double>()) + "\n";
        for (const auto& n : res.at("notes")) s += "  note      " + n.get<std::string>() + "\n";
    }
    return s;
}

// ---------------------------------------------------------------------------
// argument parsing

inline void add_set_flags(CLI::App* sub, std::string& set, double& a, double& b, double& k, int& p, double& radius, std::string& file) {
    sub->add_option("--set", set, "named set: segment, circle, K_star, L, L_p, vertical, E_segment, E_k");
    sub->add_option("--a", a, "left end for segment sets");
    sub->add_option("--b", b, "right end for segment sets");
    sub->add_option("--k", k, "scale for E_k");
    sub->add_option("--p", p, "clamp exponent for L_p");
    sub->add_option("--radius", radius, "circle radius");
    sub->add_option("--compactum", file, "JSON file with a compactum")->check(CLI::ExistingFile);
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Capacity minimization and Pade pole distributions"};
    app.set_version_flag("--version", version_string);
    std::string out_dir, precision, config;
    int verbose = 0;
    app.add_option("--out", out_dir, "results directory (overrides CAPMIN_RESULTS)");
    app.add_flag("-v,--verbose", verbose, "print the result directory");
    app.require_subcommand(1, 1);

    std::string set = "segment", cfile, method = "both", field = "zero", fmeasure, measure_file;
    double a = -1.0, b = 1.0, k = 1.0, radius = 1.0, field_k = 64.0;
    int p = 4, n = 32, m = 400;

    auto* cap = app.add_subcommand("capacity", "weighted capacity by energy minimization and/or Fekete points");
    add_set_flags(cap, set, a, b, k, p, radius, cfile);
    cap->add_option("--method", method, "energy, fekete or both")->check(CLI::IsMember({"energy", "fekete", "both"}));
    cap->add_option("--n", n, "Fekete point count");
    cap->add_option("--m", m, "discretization size for the energy method");
    cap->add_option("--field", field, "zero, chebyshev or lebesgue")->check(CLI::IsMember({"zero", "chebyshev", "lebesgue"}));
    cap->add_option("--field-k", field_k, "scale k of the preset field");
    cap->add_option("--field-measure", fmeasure, "JSON measure generating the field")->check(CLI::ExistingFile);

    auto* eq = app.add_subcommand("equilibrium", "equilibrium measure of a compactum");
    add_set_flags(eq, set, a, b, k, p, radius, cfile);
    eq->add_option("--m", m, "discretization size");

    auto* bal = app.add_subcommand("balayage", "balayage of a measure onto a compactum");
    add_set_flags(bal, set, a, b, k, p, radius, cfile);
    bal->add_option("--m", m, "discretization size");
    bal->add_option("--measure", measure_file, "JSON measure to sweep")->check(CLI::ExistingFile);

    std::string function = "fstar", function_file, nodes_preset = "chebyshev";
    bool classical = false, multipoint = false;
    int order = 8;
    double nodes_a = -64.0, nodes_b = 64.0;
    auto* pade = app.add_subcommand("pade", "classical or multipoint Pade approximant");
    pade->add_option("--function", function, "fstar or reference");
    pade->add_option("--function-file", function_file, "JSON function spec")->check(CLI::ExistingFile);
    auto* fc = pade->add_flag("--classical", classical, "classical approximant at infinity");
    pade->add_flag("--multipoint", multipoint, "multipoint approximant at quantile nodes")->excludes(fc);
    pade->add_option("--order", order, "order n");
    pade->add_option("--nodes-preset", nodes_preset, "chebyshev or lebesgue")->check(CLI::IsMember({"chebyshev", "lebesgue"}));
    pade->add_option("--nodes-a", nodes_a, "left end of the node interval");
    pade->add_option("--nodes-b", nodes_b, "right end of the node interval");

    std::string coeffs, poly_file;
    auto* roots = app.add_subcommand("roots", "polynomial roots by Aberth iteration");
    roots->add_option("--coeffs", coeffs, "comma-separated real coefficients, ascending powers");
    roots->add_option("--poly", poly_file, "JSON file {\"coefficients\": [{re, im}, ...]}")->check(CLI::ExistingFile);

    auto* exp = app.add_subcommand("experiment", "run a scripted experiment");
    std::string dir;
    auto* rep = app.add_subcommand("report", "print a stored result");
    rep->add_option("--dir", dir, "result directory");

    for (auto* s : {cap, eq, bal, pade, roots, exp, rep}) s->add_option("--config", config, "JSON request file")->check(CLI::ExistingFile);
    for (auto* s : {pade, roots, exp})
        s->add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return config_error;
    }

    auto* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    try {
        if (cmd == "report") {
            fs::path d = dir;
            if (d.empty()) {
                if (config.empty()) throw ConfigError("report: give --dir or --config");
                const auto req = io::read_json(config);
                const std::string what = req.contains("experiment") ? "experiment" : "";
                if (what.empty()) throw ConfigError("report: --config must be an experiment config");
                d = results_root(out_dir) / io::content_hash(json{{"command", what}, {"request", canonical(what, req)}});
            }
            if (!fs::exists(d / "result.json")) throw ConfigError("report: no result in " + d.string());
            out << report_text(d);
            return ok;
        }

        json req;
        if (!config.empty()) {
            req = io::read_json(config);
            if (!req.is_object()) throw ConfigError("config must be a JSON object");
        } else if (cmd == "capacity" || cmd == "equilibrium" || cmd == "balayage") {
            if (!cfile.empty()) {
                req["compactum"] = io::read_json(cfile);
            } else {
                req["set"] = set;
                json prm = json::object();
                if (sub->count("--a")) prm["a"] = a;
                if (sub->count("--b")) prm["b"] = b;
                if (sub->count("--k")) prm["k"] = k;
                if (sub->count("--p")) prm["p"] = p;
                if (sub->count("--radius")) prm["radius"] = radius;
                if (!prm.empty()) req["params"] = prm;
            }
            req["m"] = m;
            if (cmd == "capacity") {
                req["method"] = method;
                req["n"] = n;
                if (!fmeasure.empty()) req["field"] = json{{"kind", "measure"}, {"measure", io::read_json(fmeasure)}};
                else if (field != "zero") req["field"] = json{{"kind", "preset"}, {"preset", field}, {"k", field_k}};
            }
            if (cmd == "balayage") {
                if (measure_file.empty()) throw ConfigError("balayage: --measure is required");
                req["measure"] = io::read_json(measure_file);
            }
        } else if (cmd == "pade") {
            req["function"] = function_file.empty() ? json(function) : io::read_json(function_file);
            req["mode"] = multipoint ? "multipoint" : "classical";
            req["order"] = order;
            req["precision"] = "double";
            if (multipoint) req["nodes"] = json{{"preset", nodes_preset}, {"a", nodes_a}, {"b", nodes_b}};
        } else if (cmd == "roots") {
            if (!poly_file.empty()) {
                req = io::read_json(poly_file);
            } else {
                if (coeffs.empty()) throw ConfigError("roots: give --coeffs or --poly");
                json arr = json::array();
                std::stringstream ss(coeffs);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    try {
                        std::size_t used = 0;
                        const double v = std::stod(tok, &used);
                        if (used != tok.size()) throw std::invalid_argument(tok);
                        arr.push_back(io::to_json(cplx(v, 0.0)));
                    } catch (const std::exception&) {
                        throw ConfigError("roots: bad coefficient '" + tok + "'");
                    }
                }
                req["coefficients"] = arr;
            }
            req["precision"] = "double";
        } else if (cmd == "experiment") {
            throw ConfigError("experiment: --config is required");
        }
        if (!precision.empty()) req["precision"] = precision;

        const auto r = execute(cmd, req, results_root(out_dir));
        out << r.line << (r.cached ? " (cached)" : "") << "\n";
        if (verbose) err << "results: " << r.dir.string() << "\n";
        return ok;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const fs::filesystem_error& e) {
        err << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    }
}

}  // namespace capmin::cli

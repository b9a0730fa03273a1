// green-teich: command-line front end for the Green function / Teichmuller
// distance toolkit.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad arguments or
// configuration, 3 input outside its domain, 4 internal error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "green_teich/config.hpp"
#include "green_teich/disc_functional.hpp"
#include "green_teich/domains.hpp"
#include "green_teich/errors.hpp"
#include "green_teich/extremality.hpp"
#include "green_teich/invariant_metrics.hpp"
#include "green_teich/suites.hpp"
#include "green_teich/teich_torus.hpp"
#include "green_teich/text_io.hpp"

using namespace gt;

namespace {

enum Exit { kOk = 0, kFail = 1, kBadInput = 2, kDomain = 3, kInternal = 4 };

struct Output {
    Json arguments = Json::object();
    Json results;
    bool pass = true;
    Json worst_case = nullptr;
};

Json disc_to_json(const AnalyticDisc& f) {
    Json coeffs = Json::array();
    for (const CVec& c : f.coefficients) coeffs.push_back(to_json(c));
    return {{"mobius", to_json(f.mobius)}, {"coefficients", coeffs}};
}

std::string csv_field(const Json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (const char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

/// Arrays of objects become one row per element; anything else becomes
/// key,value rows.
void write_csv(std::ostream& os, const Json& results) {
    if (results.is_array() && !results.empty() && results.front().is_object()) {
        std::vector<std::string> keys;
        for (const Json& row : results)
            for (const auto& [k, v] : row.items())
                if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
        for (size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
        os << "\n";
        for (const Json& row : results) {
            for (size_t i = 0; i < keys.size(); ++i) {
                if (i) os << ",";
                if (row.contains(keys[i])) os << csv_field(row[keys[i]]);
            }
            os << "\n";
        }
        return;
    }
    os << "key,value\n";
    if (results.is_object()) {
        for (const auto& [k, v] : results.items()) os << csv_field(Json(k)) << "," << csv_field(v) << "\n";
    } else {
        os << "value," << csv_field(results) << "\n";
    }
}

CVec require_point(const ModelDomain& D, const std::string& text, const char* what) {
    const CVec v = parse_cvec(text, D.dimension());
    D.require_inside(v, what);
    return v;
}

cplx parse_modulus(const std::string& text) {
    const cplx t = parse_complex(text);
    (void)HalfPlanePoint(t);
    return t;
}

// ---------------------------------------------------------------- commands

struct GreenArgs {
    std::string domain, x, y;
    bool estimate = false;
};

Output cmd_green(const GreenArgs& a, const RunConfig& cfg) {
    const ModelDomain D = ModelDomain::parse(a.domain);
    const CVec x = require_point(D, a.x, "x");
    const CVec y = require_point(D, a.y, "y");
    Output out;
    out.arguments = {{"domain", D.to_descriptor()}, {"x", to_json(x)}, {"y", to_json(y)}, {"estimate", a.estimate}};
    const auto oracle = D.green_oracle(x, y);
    if (oracle && !a.estimate) {
        out.results = {{"value", to_json(*oracle)}, {"method", "oracle"}};
        return out;
    }
    Json res;
    if ((x - y).norm() <= kCoincidenceTol) {
        res = {{"value", "-inf"}, {"method", "estimator"}, {"witness", nullptr}};
    } else {
        const DiscSearchResult r = minimize_disc_functional(D, x, y, cfg.search);
        res = {{"value", to_json(r.estimate)},
               {"method", "estimator"},
               {"witness", disc_to_json(r.witness)},
               {"stage_estimates", r.stage_estimates},
               {"evaluations", r.evaluations}};
    }
    if (oracle) res["oracle"] = to_json(*oracle);
    out.results = res;
    return out;
}

Output cmd_disc_search(const GreenArgs& a, const RunConfig& cfg) {
    const ModelDomain D = ModelDomain::parse(a.domain);
    const CVec x = require_point(D, a.x, "x");
    const CVec y = require_point(D, a.y, "y");
    Output out;
    out.arguments = {{"domain", D.to_descriptor()}, {"x", to_json(x)}, {"y", to_json(y)}};
    const DiscSearchResult r = minimize_disc_functional(D, x, y, cfg.search);
    Json res = {{"estimate", to_json(r.estimate)},
                {"stage_estimates", r.stage_estimates},
                {"witness", disc_to_json(r.witness)},
                {"evaluations", r.evaluations}};
    if (const auto g = D.green_oracle(x, y)) {
        res["oracle"] = to_json(*g);
        res["gap"] = r.estimate.value() - g->value();
    }
    out.results = res;
    return out;
}

Output cmd_teich(const std::string& tau1, const std::string& tau2) {
    const TorusModulus x(parse_modulus(tau1)), y(parse_modulus(tau2));
    Output out;
    out.arguments = {{"tau1", to_json(x.value())}, {"tau2", to_json(y.value())}};
    out.results = teich_distance(x, y).to_json();
    return out;
}

struct MetricArgs {
    std::string domain, x, xi;
};

Output cmd_azukawa(const MetricArgs& a, const RunConfig& cfg) {
    const ModelDomain D = ModelDomain::parse(a.domain);
    const CVec x = require_point(D, a.x, "x");
    const TangentVector v(x, parse_cvec(a.xi, D.dimension()));
    Output out;
    out.arguments = {{"domain", D.to_descriptor()}, {"x", to_json(x)}, {"xi", to_json(v.direction)}};
    const AzukawaResult r = azukawa(D, v, cfg.limit, cfg.search);
    out.results = {{"value", r.value},
                   {"ladder", r.ladder},
                   {"convergence_rate", finite_or_tag(r.convergence_rate)},
                   {"converged", r.converged},
                   {"green_source", to_string(r.source)}};
    return out;
}

Output cmd_kobayashi(const MetricArgs& a, const RunConfig& cfg) {
    const ModelDomain D = ModelDomain::parse(a.domain);
    const CVec x = require_point(D, a.x, "x");
    const TangentVector v(x, parse_cvec(a.xi, D.dimension()));
    Output out;
    out.arguments = {{"domain", D.to_descriptor()}, {"x", to_json(x)}, {"xi", to_json(v.direction)}};
    const KobayashiResult r = kobayashi_royden(D, v, cfg.search);
    out.results = {{"value", r.value}, {"witness", disc_to_json(r.witness)}, {"evaluations", r.evaluations}};
    return out;
}

struct ExtremalArgs {
    bool torus = false, disc = false;
    std::string mu = "0";
    std::string pattern;
    double k = 0.0;
    int degree = -1;
};

Output cmd_extremal(const ExtremalArgs& a, const RunConfig& cfg) {
    if (a.torus == a.disc) throw ConfigError("extremal: choose exactly one of --torus and --disc");
    std::optional<BeltramiField> mu;
    std::optional<QuadDiffBasis> basis;
    std::string pattern = a.pattern;
    if (a.torus) {
        if (pattern.empty() || pattern == "constant") {
            pattern = "constant";
            mu = BeltramiField::constant(parse_complex(a.mu));
        } else if (pattern == "alternating") {
            mu = torus_alternating_field(a.k);
        } else {
            throw ConfigError("extremal --torus: pattern must be constant or alternating");
        }
        basis = a.degree <= 0 ? QuadDiffBasis::torus_constants() : QuadDiffBasis::torus_monomials(a.degree);
    } else {
        if (pattern.empty()) pattern = "teichmuller";
        if (pattern == "teichmuller") mu = disc_teichmuller_field(a.k);
        else if (pattern == "angular4") mu = disc_angular4_field(a.k);
        else throw ConfigError("extremal --disc: pattern must be teichmuller or angular4");
        basis = QuadDiffBasis::disc_monomials(a.degree < 0 ? 6 : a.degree);
    }
    Output out;
    out.arguments = {{"reference", a.torus ? "torus" : "disc"},
                     {"pattern", pattern},
                     {"label", mu->label()},
                     {"sup_norm", mu->sup_norm()},
                     {"basis_size", basis->elements.size()}};
    const ExtremalityReport rep = is_extremal(*mu, *basis, cfg.tol("extremal"), cfg.tol("gap_bound"), cfg.quad);
    out.results = rep.to_json();
    return out;
}

Output cmd_verify(const std::string& suite, const SuiteOptions& opts, const RunConfig& cfg) {
    Output out;
    out.arguments = {{"suite", suite}};
    if (opts.n) out.arguments["n"] = *opts.n;
    if (!opts.domain.empty()) out.arguments["domain"] = opts.domain;
    if (!opts.case_name.empty()) out.arguments["case"] = opts.case_name;
    const SuiteResult r = run_suite(suite, opts, cfg);
    out.results = r.checks;
    out.pass = r.pass;
    out.worst_case = r.worst_case;
    for (const Json& c : r.checks) {
        std::cerr << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>() << "\n";
    }
    return out;
}

/// Finite-difference derivatives of the Teichmuller distance d(., tau2) at
/// tau1 with shrinking steps. Diagnostic only.
Output cmd_smoothness(const std::string& tau1, const std::string& tau2, double h) {
    if (!(h > 0.0)) throw ConfigError("--step must be positive");
    const cplx x = parse_modulus(tau1);
    const TorusModulus y(parse_modulus(tau2));
    if (h >= 0.5 * x.imag()) throw ConfigError("--step must be below Im(tau1) / 2");
    auto d = [&](cplx t) { return teich_distance(TorusModulus(t), y).d.value(); };
    Output out;
    out.arguments = {{"tau1", to_json(x)}, {"tau2", to_json(y.value())}, {"h", h}};
    Json rows = Json::array();
    for (int k = 0; k < 4; ++k) {
        const double s = std::ldexp(h, -k);
        const double d0 = d(x);
        const double dxp = d(x + s), dxm = d(x - s);
        const double dyp = d(x + cplx(0, s)), dym = d(x - cplx(0, s));
        rows.push_back({{"step", s},
                        {"d_re", (dxp - dxm) / (2 * s)},
                        {"d_im", (dyp - dym) / (2 * s)},
                        {"d2_re", (dxp - 2 * d0 + dxm) / (s * s)},
                        {"d2_im", (dyp - 2 * d0 + dym) / (s * s)}});
    }
    out.results = rows;
    return out;
}

void emit(const std::string& command, const Output& o, const RunConfig& cfg, std::optional<double> seconds) {
    if (cfg.format == OutputFormat::csv) {
        write_csv(std::cout, o.results);
        return;
    }
    Json echo = cfg.echo();
    echo["arguments"] = o.arguments;
    Json doc = {{"command", command},
                {"config_echo", echo},
                {"results", o.results},
                {"pass", o.pass},
                {"worst_case", o.worst_case}};
    if (seconds) doc["timing"] = {{"seconds", *seconds}, {"nondeterministic", true}};
    std::cout << doc.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green functions, invariant metrics and Teichmuller distances on model domains"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string format;
    std::vector<std::string> settings;
    bool timing = false;
    app.add_option("--config", config_path, "key = value config file (after $GREEN_TEICH_CONFIG)");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--set", settings, "override a config key: --set key=value");
    app.add_flag("--timing", timing, "add a wall-clock timing field to the JSON output");

    GreenArgs green;
    auto* g = app.add_subcommand("green", "Green function g_D(x, y)");
    g->add_option("--domain", green.domain, "disc, ballN, polydiscN or a descriptor")->required();
    g->add_option("--x", green.x, "point x")->required();
    g->add_option("--y", green.y, "pole y")->required();
    g->add_flag("--estimate", green.estimate, "use the disc-functional estimator even when an oracle exists");

    GreenArgs search;
    auto* ds = app.add_subcommand("disc-search", "disc-functional search with witness and stage estimates");
    ds->add_option("--domain", search.domain)->required();
    ds->add_option("--x", search.x)->required();
    ds->add_option("--y", search.y)->required();

    std::string tau1, tau2;
    auto* t = app.add_subcommand("teich", "Teichmuller distance on the torus");
    t->add_option("--tau1", tau1, "modulus in the upper half-plane")->required();
    t->add_option("--tau2", tau2, "modulus in the upper half-plane")->required();

    MetricArgs az_args, kr_args;
    auto* az = app.add_subcommand("azukawa", "Azukawa metric from the Green function");
    az->add_option("--domain", az_args.domain)->required();
    az->add_option("--x", az_args.x)->required();
    az->add_option("--xi", az_args.xi)->required();
    auto* kr = app.add_subcommand("kobayashi", "Kobayashi-Royden metric from extremal discs");
    kr->add_option("--domain", kr_args.domain)->required();
    kr->add_option("--x", kr_args.x)->required();
    kr->add_option("--xi", kr_args.xi)->required();

    ExtremalArgs ex;
    auto* e = app.add_subcommand("extremal", "extremality test for a Beltrami differential");
    e->add_flag("--torus", ex.torus, "square torus reference domain");
    e->add_flag("--disc", ex.disc, "unit disc reference domain");
    e->add_option("--mu", ex.mu, "constant Beltrami coefficient (torus)");
    e->add_option("--pattern", ex.pattern, "constant, alternating (torus); teichmuller, angular4 (disc)");
    e->add_option("--k", ex.k, "sup norm of a patterned field");
    e->add_option("--degree", ex.degree, "degree of the monomial basis");

    std::string suite;
    SuiteOptions suite_opts;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
    v->add_option("--n", suite_opts.n, "sample count")->check(CLI::PositiveNumber);
    v->add_option("--domain", suite_opts.domain, "theorem2: disc or ball");
    v->add_option("--case", suite_opts.case_name, "corollary5 case");

    std::string sp1, sp2;
    double h = 1e-3;
    auto* sp = app.add_subcommand("smoothness-probe", "finite-difference derivatives of d(., tau2) at tau1");
    sp->add_option("--tau1", sp1)->required();
    sp->add_option("--tau2", sp2)->required();
    sp->add_option("--step", h, "largest finite-difference step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& s) {
        return app.exit(s);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kBadInput;
    }

    RunConfig cfg;
    try {
        if (const char* env = std::getenv("GREEN_TEICH_CONFIG"); env && *env) load_config_file(cfg, env);
        if (!config_path.empty()) load_config_file(cfg, config_path);
        for (const std::string& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
            cfg.set(s.substr(0, eq), s.substr(eq + 1));
        }
        if (seed) cfg.seed = *seed;
        if (threads) cfg.threads = *threads;
        if (!format.empty()) cfg.set("format", format);
        cfg.propagate();
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return kBadInput;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string command;
    Output out;
    try {
        if (*g) command = "green", out = cmd_green(green, cfg);
        else if (*ds) command = "disc-search", out = cmd_disc_search(search, cfg);
        else if (*t) command = "teich", out = cmd_teich(tau1, tau2);
        else if (*az) command = "azukawa", out = cmd_azukawa(az_args, cfg);
        else if (*kr) command = "kobayashi", out = cmd_kobayashi(kr_args, cfg);
        else if (*e) command = "extremal", out = cmd_extremal(ex, cfg);
        else if (*v) command = "verify", out = cmd_verify(suite, suite_opts, cfg);
        else if (*sp) command = "smoothness-probe", out = cmd_smoothness(sp1, sp2, h);
    } catch (const DomainError& err) {
        std::cerr << "domain error: " << err.what() << "\n";
        return kDomain;
    } catch (const NoAdmissibleDiscError& err) {
        std::cerr << "no admissible disc: " << err.what() << "\n";
        return kDomain;
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& err) {
        std::cerr << "invalid input: " << err.what() << "\n";
        return kBadInput;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kInternal;
    }
    std::optional<double> seconds;
    if (timing) seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(command, out, cfg, seconds);
    return out.pass ? kOk : kFail;
}

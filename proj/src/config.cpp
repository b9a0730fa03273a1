#include "green_teich/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "green_teich/errors.hpp"

namespace gt {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    }
    return out;
}

int positive_int(const std::string& key, const std::string& v) {
    const auto n = to_int(key, v);
    if (n <= 0 || n > 1'000'000'000) throw ConfigError("'" + key + "' must be a positive integer");
    return static_cast<int>(n);
}

double positive_double(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("'" + key + "' must be a positive number");
    return d;
}

} // namespace

RunConfig::RunConfig() {
    tolerances = {
        {"eq2_transform", 1e-13},  {"eq2_half_plane", 1e-12}, {"lemma1", 1e-4},     {"lemma1_soundness", 1e-9},
        {"poletskii_disc", 1e-6},  {"lemma2", 1e-12},         {"theorem2", 5e-3},   {"theorem3_ratio", 1e-10},
        {"theorem3_value", 1e-12}, {"hk_constant", 1e-12},    {"extremal", 1e-6},   {"gap_bound", 1e-2},
        {"submean", 1e-8},         {"contraction", 1e-9},     {"symmetry", 1e-14},  {"hyperconvex_tail", 1e-6},
    };
}

double RunConfig::tol(const std::string& name) const {
    const auto it = tolerances.find(name);
    if (it == tolerances.end()) throw ConfigError("unknown tolerance '" + name + "'");
    return it->second;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key.rfind("tol.", 0) == 0) {
        const std::string name = key.substr(4);
        if (!tolerances.contains(name)) throw ConfigError("unknown tolerance '" + name + "'");
        tolerances[name] = positive_double(key, v);
        return;
    }
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"seed",
         [&](const std::string& s) {
             if (s.empty() || s[0] == '-') throw ConfigError("'seed' must be a nonnegative integer");
             std::uint64_t out = 0;
             const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
             if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("'seed' must be an integer");
             seed = out;
         }},
        {"threads", [&](const std::string& s) { threads = positive_int("threads", s); }},
        {"format",
         [&](const std::string& s) {
             if (s == "json") format = OutputFormat::json;
             else if (s == "csv") format = OutputFormat::csv;
             else throw ConfigError("'format' must be json or csv");
         }},
        {"max_degree", [&](const std::string& s) { search.max_degree = positive_int("max_degree", s); }},
        {"n_starts", [&](const std::string& s) { search.n_starts = positive_int("n_starts", s); }},
        {"n_boundary_samples",
         [&](const std::string& s) {
             search.n_boundary_samples = positive_int("n_boundary_samples", s);
             if (search.n_boundary_samples < 64) throw ConfigError("'n_boundary_samples' must be at least 64");
         }},
        {"margin", [&](const std::string& s) { search.margin = positive_double("margin", s); }},
        {"tol", [&](const std::string& s) { search.tol = positive_double("tol", s); }},
        {"max_evals", [&](const std::string& s) { search.max_evals = positive_int("max_evals", s); }},
        {"refine_starts", [&](const std::string& s) { search.refine_starts = positive_int("refine_starts", s); }},
        {"refine_evals", [&](const std::string& s) { search.refine_evals = positive_int("refine_evals", s); }},
        {"lambda0",
         [&](const std::string& s) {
             limit.lambda0 = positive_double("lambda0", s);
             if (limit.lambda0 >= 1.0) throw ConfigError("'lambda0' must be below 1");
         }},
        {"rungs",
         [&](const std::string& s) {
             limit.rungs = positive_int("rungs", s);
             if (limit.rungs < 3) throw ConfigError("'rungs' must be at least 3");
         }},
        {"limit_tol", [&](const std::string& s) { limit.tol = positive_double("limit_tol", s); }},
        {"torus_cells", [&](const std::string& s) { quad.torus_cells = positive_int("torus_cells", s); }},
        {"disc_radial", [&](const std::string& s) { quad.disc_radial = positive_int("disc_radial", s); }},
        {"disc_angular", [&](const std::string& s) { quad.disc_angular = positive_int("disc_angular", s); }},
        {"radial_ratio",
         [&](const std::string& s) {
             quad.radial_ratio = positive_double("radial_ratio", s);
             if (quad.radial_ratio > 1.0) throw ConfigError("'radial_ratio' must lie in (0, 1]");
         }},
        {"hk_starts", [&](const std::string& s) { quad.n_starts = positive_int("hk_starts", s); }},
        {"hk_max_evals", [&](const std::string& s) { quad.max_evals = positive_int("hk_max_evals", s); }},
    };
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(v);
}

void RunConfig::propagate() {
    search.seed = seed;
    quad.seed = seed;
    search.threads = threads;
    quad.threads = threads;
}

Json RunConfig::echo() const {
    Json tols = Json::object();
    for (const auto& [k, v] : tolerances) tols[k] = v;
    return {{"seed", seed},
            {"format", format == OutputFormat::json ? "json" : "csv"},
            {"tolerances", tols},
            {"search",
             {{"max_degree", search.max_degree},
              {"n_starts", search.n_starts},
              {"n_boundary_samples", search.n_boundary_samples},
              {"margin", search.margin},
              {"tol", search.tol},
              {"max_evals", search.max_evals},
              {"refine_starts", search.refine_starts},
              {"refine_evals", search.refine_evals}}},
            {"limit", {{"lambda0", limit.lambda0}, {"rungs", limit.rungs}, {"tol", limit.tol}}},
            {"quadrature",
             {{"torus_cells", quad.torus_cells},
              {"disc_radial", quad.disc_radial},
              {"disc_angular", quad.disc_angular},
              {"radial_ratio", quad.radial_ratio},
              {"n_starts", quad.n_starts},
              {"max_evals", quad.max_evals}}}};
}

std::map<std::string, std::string> parse_key_values(std::istream& in, const std::string& source) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    for (const auto& [k, v] : parse_key_values(in, path)) {
        try {
            cfg.set(k, v);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ": " + e.what());
        }
    }
}

} // namespace gt

// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// the runtime budget. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "green_teich/config.hpp"
#include "green_teich/suites.hpp"

using namespace gt;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;  // <= 0 means no runtime budget
    std::function<bool(std::string&)> run;
};

RunConfig base_config() {
    RunConfig cfg;
    cfg.seed = 7;
    cfg.propagate();
    return cfg;
}

bool all_pass(const SuiteResult& r, std::string& note) {
    for (const Json& c : r.checks) {
        if (!c["pass"].get<bool>()) note += " failed:" + c["check"].get<std::string>();
    }
    return r.pass;
}

SuiteResult suite(const std::string& name, std::optional<int> n = {}, const std::string& domain = "",
                  const std::string& case_name = "", const RunConfig& cfg = base_config()) {
    SuiteOptions o;
    o.n = n;
    o.domain = domain;
    o.case_name = case_name;
    return run_suite(name, o, cfg);
}

std::string payload(const SuiteResult& r) {
    return Json{{"suite", r.suite}, {"checks", r.checks}, {"pass", r.pass}, {"worst_case", r.worst_case}}.dump();
}

bool deterministic(const std::string& name, std::optional<int> n, const std::string& domain,
                   const std::string& case_name, std::string& note) {
    const std::string a = payload(suite(name, n, domain, case_name));
    const std::string b = payload(suite(name, n, domain, case_name));
    if (a != b) note += " differs:" + name + (case_name.empty() ? "" : "/" + case_name);
    return a == b;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 eq2 identity on T(1,1), 100 pairs", 1.0,
         [](std::string& note) { return all_pass(suite("eq2", 100), note); }},
        {"2 disc functional vs ball Green function, 100 pairs", 120.0,
         [](std::string& note) { return all_pass(run_lemma1_ball(100, base_config()), note); }},
        {"3 disc functional exact on the disc, 50 pairs", 30.0,
         [](std::string& note) { return all_pass(run_poletskii_disc(50, base_config()), note); }},
        {"4 Azukawa = Kobayashi-Royden, disc 50 + ball 20", 120.0,
         [](std::string& note) {
             const bool disc = all_pass(suite("theorem2", 50, "disc"), note);
             const bool ball = all_pass(suite("theorem2", 20, "ball"), note);
             return disc && ball;
         }},
        {"5 Green function = log k on the torus, 50 pairs", 1.0,
         [](std::string& note) { return all_pass(suite("lemma2", 50), note); }},
        {"6 extremality criterion on the torus", 10.0,
         [](std::string& note) {
             const bool c = all_pass(suite("corollary5", 20, "", "torus-constant"), note);
             const bool a = all_pass(suite("corollary5", {}, "", "torus-alternating"), note);
             return c && a;
         }},
        {"7 Teichmuller differential on the disc is extremal", 30.0,
         [](std::string& note) { return all_pass(suite("corollary5", {}, "", "disc-teichmuller"), note); }},
        {"8 torus certificate ladder", 1.0,
         [](std::string& note) { return all_pass(suite("theorem3", 20), note); }},
        {"9 symmetry, sub-mean value, contraction, hyperconvexity", 60.0,
         [](std::string& note) {
             const bool p = all_pass(suite("psh"), note);
             const bool h = all_pass(suite("hyperconvex"), note);
             return p && h;
         }},
        {"10 byte-identical reruns", 0.0,
         [](std::string& note) {
             bool ok = true;
             ok = deterministic("eq2", 100, "", "", note) && ok;
             ok = deterministic("lemma1", 6, "", "", note) && ok;
             ok = deterministic("lemma2", 50, "", "", note) && ok;
             ok = deterministic("theorem2", 4, "", "", note) && ok;
             ok = deterministic("theorem3", 20, "", "", note) && ok;
             ok = deterministic("corollary5", 20, "", "torus-constant", note) && ok;
             ok = deterministic("corollary5", {}, "", "torus-alternating", note) && ok;
             ok = deterministic("psh", {}, "", "", note) && ok;
             ok = deterministic("hyperconvex", {}, "", "", note) && ok;
             // thread count must not change the payload
             RunConfig one = base_config(), three = base_config();
             three.threads = 3;
             three.propagate();
             const bool same = payload(run_lemma1_ball(6, one)) == payload(run_lemma1_ball(6, three)) &&
                               payload(suite("corollary5", {}, "", "disc-angular4", one)) ==
                                   payload(suite("corollary5", {}, "", "disc-angular4", three));
             if (!same) note += " differs:threads";
             return ok && same;
         }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string note;
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = c.run(note);
        } catch (const std::exception& e) {
            note += std::string(" exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
            pass = false;
            note += " over budget";
        }
        if (!pass) ++failures;
        std::printf("%s  %s  (%.2f s%s)%s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                    c.budget_seconds > 0.0 ? (", budget " + std::to_string(static_cast<int>(c.budget_seconds)) + " s").c_str()
                                           : "",
                    note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int exit_code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + GREEN_TEICH_CLI + std::string(" ") + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST_CASE("green: oracle, estimator and domain violations") {
    Run r = run("green --domain disc --x 0 --y 0.5");
    REQUIRE(r.exit_code == 0);
    auto j = parse(r);
    CHECK(j["command"] == "green");
    CHECK(j["results"]["method"] == "oracle");
    CHECK(j["results"]["value"].get<double>() == doctest::Approx(std::log(0.5)).epsilon(1e-12));
    for (const char* key : {"command", "config_echo", "results", "pass", "worst_case"}) CHECK(j.contains(key));

    r = run("green --domain ball2 --x 0,0 --y 0.5,0 --estimate");
    REQUIRE(r.exit_code == 0);
    j = parse(r);
    CHECK(j["results"]["method"] == "estimator");
    CHECK(std::abs(j["results"]["value"].get<double>() - std::log(0.5)) < 1e-4);
    CHECK(j["results"]["witness"]["coefficients"].is_array());

    CHECK(run("green --domain disc --x 2 --y 0").exit_code == 3);
    CHECK(run("green --domain disc --x 0.5 --y 0.5").exit_code == 0);
    CHECK(parse(run("green --domain disc --x 0.5 --y 0.5"))["results"]["value"] == "-inf");
    CHECK(run("green --domain torus --x 0 --y 0.5").exit_code == 2);
    CHECK(run("green --domain disc --x zz --y 0.5").exit_code == 2);
}

TEST_CASE("teich: distance report and symmetry") {
    Run r = run("teich --tau1 i --tau2 2i");
    REQUIRE(r.exit_code == 0);
    auto res = parse(r)["results"];
    CHECK(res["k"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(res["d"].get<double>() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(res["g"].get<double>() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-12));

    res = parse(run("teich --tau1 i --tau2 i"))["results"];
    CHECK(res["k"].get<double>() == 0.0);
    CHECK(res["g"] == "-inf");

    const auto a = parse(run("teich --tau1 1+i --tau2 i"))["results"];
    const auto b = parse(run("teich --tau1 i --tau2 1+i"))["results"];
    CHECK(a["k"] == b["k"]);
    CHECK(a["d"] == b["d"]);
    CHECK(a["g"] == b["g"]);

    CHECK(run("teich --tau1 1-i --tau2 i").exit_code == 3);
}

TEST_CASE("metrics and disc search") {
    auto j = parse(run("azukawa --domain disc --x 0.5 --xi 1"));
    CHECK(j["results"]["value"].get<double>() == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    j = parse(run("kobayashi --domain disc --x 0.5 --xi 1"));
    CHECK(std::abs(j["results"]["value"].get<double>() - 4.0 / 3.0) < 1e-6);
    j = parse(run("disc-search --domain polydisc2 --x 0,0 --y 0.5,0.25"));
    CHECK(std::abs(j["results"]["estimate"].get<double>() - std::log(0.5)) < 1e-4);
    CHECK(j["results"]["stage_estimates"].size() == 4);
    CHECK(run("kobayashi --domain disc --x 0.5 --xi 0").exit_code == 2);
    CHECK(run("disc-search --domain disc --x 0.3 --y 0.3").exit_code == 2);
}

TEST_CASE("extremal") {
    auto j = parse(run("extremal --torus --mu 0.3"));
    CHECK(j["results"]["verdict"] == "extremal");
    CHECK(j["results"]["hk_value"].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
    j = parse(run("extremal --torus --mu 0"));
    CHECK(j["results"]["verdict"] == "extremal");
    CHECK(j["results"]["hk_value"].get<double>() == 0.0);
    CHECK(run("extremal --torus --mu 1.2").exit_code == 3);
    CHECK(run("extremal --torus --disc").exit_code == 2);

    j = parse(run("extremal --disc --pattern angular4 --k 0.4 --degree 6"));
    CHECK(j["results"]["verdict"] == "not_extremal");
    CHECK(j["results"]["provisional"] == true);
}

TEST_CASE("verify: exit codes and byte-identical reruns") {
    const Run a = run("verify eq2 --n 100 --seed 7");
    CHECK(a.exit_code == 0);
    const auto j = parse(a);
    CHECK(j["pass"] == true);
    CHECK(j["results"][0]["details"]["max_half_plane_discrepancy"].get<double>() <= 1e-12);
    CHECK(run("verify eq2 --n 100 --seed 7").out == a.out);
    CHECK(run("verify eq2 --n 100 --seed 8").out != a.out);

    const Run p = run("verify psh --n 20 --seed 3");
    CHECK(p.exit_code == 0);
    CHECK(run("verify psh --n 20 --seed 3").out == p.out);

    CHECK(run("verify theorem2 --domain disc --n 50").exit_code == 0);
    const auto c = parse(run("verify corollary5 --case torus-constant"));
    CHECK(c["pass"] == true);
    CHECK(c["results"][0]["worst_case"]["discrepancy"].get<double>() <= 1e-12);

    // a tolerance no computation can meet
    CHECK(run("verify eq2 --set tol.eq2_transform=1e-300").exit_code == 1);
    CHECK(run("verify nonsense").exit_code == 2);
    CHECK(run("verify theorem2 --domain cube").exit_code == 2);
    CHECK(run("verify corollary5 --case unknown").exit_code == 2);
    CHECK(run("verify eq2 --set bogus=1").exit_code == 2);
    CHECK(run("verify eq2 --set tol.eq2_transform=-1").exit_code == 2);
}

TEST_CASE("config files, environment and output formats") {
    const std::string path = "cli_test_config.cfg";
    {
        std::ofstream f(path);
        f << "# test config\nseed = 11\ntol.eq2_half_plane = 1e-11\n";
    }
    auto j = parse(run("verify eq2 --n 5 --config " + path));
    CHECK(j["config_echo"]["seed"] == 11);
    CHECK(j["config_echo"]["tolerances"]["eq2_half_plane"].get<double>() == 1e-11);
    // flags override the file
    j = parse(run("verify eq2 --n 5 --seed 12 --config " + path));
    CHECK(j["config_echo"]["seed"] == 12);
    j = parse(run("verify eq2 --n 5", "GREEN_TEICH_CONFIG=" + path));
    CHECK(j["config_echo"]["seed"] == 11);
    CHECK(run("verify eq2 --n 5", "GREEN_TEICH_CONFIG=/nonexistent.cfg").exit_code == 2);
    {
        std::ofstream f(path);
        f << "seed 11\n";
    }
    CHECK(run("verify eq2 --n 5 --config " + path).exit_code == 2);
    std::remove(path.c_str());

    const Run csv = run("verify eq2 --n 5 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("check,samples,worst_case,details,pass\n", 0) == 0);
    const Run t = run("teich --tau1 i --tau2 2i --format csv");
    CHECK(t.out.rfind("key,value\n", 0) == 0);

    CHECK_FALSE(parse(run("teich --tau1 i --tau2 2i")).contains("timing"));
    CHECK(parse(run("teich --tau1 i --tau2 2i --timing"))["timing"]["nondeterministic"] == true);

    const auto s = parse(run("smoothness-probe --tau1 1+2i --tau2 i"));
    CHECK(s["results"].size() == 4);
    CHECK(run("smoothness-probe --tau1 1+2i --tau2 i --step -1").exit_code == 2);
}

#include <doctest.h>

#include <sstream>

#include "green_teich/config.hpp"
#include "green_teich/errors.hpp"
#include "green_teich/polynomial.hpp"
#include "green_teich/optimize.hpp"
#include "green_teich/text_io.hpp"
#include "test_support.hpp"

using namespace gt;

TEST_CASE("complex number syntax") {
    CHECK(parse_complex("1+2i") == cplx(1, 2));
    CHECK(parse_complex("1-2i") == cplx(1, -2));
    CHECK(parse_complex("-0.5i") == cplx(0, -0.5));
    CHECK(parse_complex("i") == cplx(0, 1));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("0.25") == cplx(0.25, 0));
    CHECK(parse_complex("0.3,0.4") == cplx(0.3, 0.4));
    CHECK(parse_complex("1e-3+2e-3i") == cplx(1e-3, 2e-3));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex(""), ConfigError);

    CHECK(parse_cvec("0,0", 2) == testing_support::vec({0, 0}));
    CHECK(parse_cvec("0.5+i,0.1", 2) == testing_support::vec({cplx(0.5, 1), 0.1}));
    CHECK(parse_cvec("0.5,1,0.1,0", 2) == testing_support::vec({cplx(0.5, 1), 0.1}));
    CHECK(parse_cvec("0.3,0.4", 1) == testing_support::vec({cplx(0.3, 0.4)}));
    CHECK_THROWS_AS(parse_cvec("1,2,3", 2), ConfigError);
}

TEST_CASE("property: numbers survive formatting") {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> g;
    for (int i = 0; i < 500; ++i) {
        const double v = g(rng) * std::pow(10.0, static_cast<int>(g(rng) * 5));
        CHECK(std::stod(format_double(v)) == v);
        const cplx z(g(rng), g(rng));
        CHECK(parse_complex(format_complex(z)) == z);
    }
    CHECK(to_json(ExtendedReal::neg_inf()) == "-inf");
    CHECK(to_json(cplx(1, -2)).dump() == "[1.0,-2.0]");
}

TEST_CASE("config files and overrides") {
    std::istringstream in("# comment\nseed = 42\nmax_degree=3\n\ntol.lemma1 = 1e-5  # trailing\nformat = csv\n");
    const auto kv = parse_key_values(in, "test");
    RunConfig cfg;
    for (const auto& [k, v] : kv) cfg.set(k, v);
    cfg.propagate();
    CHECK(cfg.seed == 42);
    CHECK(cfg.search.seed == 42);
    CHECK(cfg.search.max_degree == 3);
    CHECK(cfg.tol("lemma1") == 1e-5);
    CHECK(cfg.format == OutputFormat::csv);

    RunConfig fresh;
    CHECK(fresh.seed == 0);
    for (const auto& [name, v] : fresh.tolerances) CHECK(v > 0.0);

    CHECK_THROWS_AS(fresh.set("tol.lemma1", "0"), ConfigError);
    CHECK_THROWS_AS(fresh.set("tol.lemma1", "-1e-3"), ConfigError);
    CHECK_THROWS_AS(fresh.set("tol.nonsense", "1"), ConfigError);
    CHECK_THROWS_AS(fresh.set("bogus", "1"), ConfigError);
    CHECK_THROWS_AS(fresh.set("max_degree", "two"), ConfigError);
    CHECK_THROWS_AS(fresh.set("n_boundary_samples", "16"), ConfigError);
    CHECK_THROWS_AS(fresh.set("seed", "-4"), ConfigError);

    std::istringstream bad("seed 4\n");
    CHECK_THROWS_AS(parse_key_values(bad, "bad"), ConfigError);
    CHECK_THROWS_AS(load_config_file(fresh, "/nonexistent/green.cfg"), ConfigError);
}

TEST_CASE("polynomial roots") {
    // (z - 0.5)(z + 0.25i)(z - 2)
    std::vector<cplx> p = {1.0};
    for (const cplx r : {cplx(0.5), cplx(0, -0.25), cplx(2.0)}) p = poly_mul_linear(p, r);
    auto roots = poly_roots(p);
    REQUIRE(roots.size() == 3);
    for (const cplx r : {cplx(0.5), cplx(0, -0.25), cplx(2.0)}) {
        bool found = false;
        for (const Root& q : roots) found = found || std::abs(q.value - r) < 1e-12;
        CHECK(found);
    }
    // double root merges
    std::vector<cplx> sq = poly_mul_linear(poly_mul_linear(std::vector<cplx>{1.0}, 0.3), 0.3);
    roots = poly_roots(sq);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 2);
    CHECK(poly_roots(std::vector<cplx>{0.0, 0.0}).empty());
    CHECK(std::abs(poly_eval(p, 0.5)) < 1e-15);
}

TEST_CASE("deterministic streams and Nelder-Mead") {
    StreamRng a(5, 9), b(5, 9), c(5, 10);
    for (int i = 0; i < 10; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x != c.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    const auto r = nelder_mead(
        [](const std::vector<double>& p) { return (p[0] - 1) * (p[0] - 1) + 10 * (p[1] + 2) * (p[1] + 2); },
        {0.0, 0.0}, {0.5, 0.5}, {});
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
    // infeasible region is avoided
    const auto s = nelder_mead(
        [](const std::vector<double>& p) { return p[0] < 0.5 ? INFINITY : p[0] * p[0]; }, {2.0}, {0.3}, {});
    CHECK(s.x[0] == doctest::Approx(0.5).epsilon(1e-3));

    const auto order = run_indexed<int>(9, 4, [](int i) { return i * i; });
    for (int i = 0; i < 9; ++i) CHECK(order[i] == i * i);
}

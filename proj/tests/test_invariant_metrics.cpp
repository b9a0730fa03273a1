#include <doctest.h>

#include "green_teich/errors.hpp"
#include "green_teich/invariant_metrics.hpp"
#include "green_teich/teich_torus.hpp"
#include "test_support.hpp"

using namespace gt;
using testing_support::random_ball;
using testing_support::vec;

namespace {

// Infinitesimal Kobayashi metric of the ball, the usual Bergman-type formula
double ball_metric_ref(const CVec& x, const CVec& xi) {
    const double a = 1.0 - x.squaredNorm();
    return std::sqrt(xi.squaredNorm() / a + std::norm(x.dot(xi)) / (a * a));
}

SearchConfig quick_config() {
    SearchConfig cfg;
    cfg.max_degree = 2;
    cfg.n_starts = 8;
    return cfg;
}

} // namespace

TEST_CASE("Azukawa metric on the disc and ball") {
    const auto a0 = azukawa(ModelDomain::disc(), TangentVector(vec({0}), vec({1})));
    CHECK(a0.value == doctest::Approx(1.0).epsilon(1e-14));
    for (const double rung : a0.ladder) CHECK(rung == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a0.source == GreenSource::oracle);

    const auto a1 = azukawa(ModelDomain::disc(), TangentVector(vec({0.5}), vec({1})));
    CHECK(a1.value == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(a1.converged);
    // first-order error in lambda cancels after the extrapolation
    CHECK(a1.convergence_rate == doctest::Approx(1.0).epsilon(0.05));

    const auto a2 = azukawa(ModelDomain::euclidean_ball(2), TangentVector(vec({0, 0}), vec({0.6, 0.8})));
    CHECK(a2.value == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(azukawa(ModelDomain::disc(), TangentVector(vec({0.995}), vec({1}))), DomainError);
    CHECK_THROWS_AS(TangentVector(vec({0, 0}), vec({0, 0})), std::invalid_argument);
}

TEST_CASE("Kobayashi-Royden metric on the disc and ball") {
    const SearchConfig cfg;
    CHECK(kobayashi_royden(ModelDomain::disc(), TangentVector(vec({0}), vec({1})), cfg).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(kobayashi_royden(ModelDomain::disc(), TangentVector(vec({0.5}), vec({1})), cfg).value - 4.0 / 3.0) <
          1e-6);
    const CVec unit = vec({cplx(0.6, 0.0), cplx(0.0, 0.8)});
    CHECK(std::abs(kobayashi_royden(ModelDomain::euclidean_ball(2), TangentVector(vec({0, 0}), unit), cfg).value - 1.0) <
          1e-4);

    // the witness passes through x with derivative along xi
    const CVec x = vec({0.2, cplx(0, 0.3)}), xi = vec({1, cplx(0.5, 0.5)});
    const auto r = kobayashi_royden(ModelDomain::euclidean_ball(2), TangentVector(x, xi), cfg);
    CHECK((r.witness(0.0) - x).norm() < 1e-12);
    const CVec d = r.witness.derivative_at_origin();
    const cplx ratio = d(0) / xi(0);
    CHECK((d - ratio * xi).norm() < 1e-10 * d.norm());
    CHECK(1.0 / std::abs(ratio) == doctest::Approx(r.value).epsilon(1e-10));
}

TEST_CASE("property: both metrics match the ball closed form") {
    std::mt19937_64 rng(31);
    const SearchConfig cfg = quick_config();
    for (int i = 0; i < 6; ++i) {
        const CVec x = random_ball(rng, 2, 0.8), xi = random_ball(rng, 2, 1.0);
        const double exact = ball_metric_ref(x, xi);
        const TangentVector v(x, xi);
        CHECK(azukawa(ModelDomain::euclidean_ball(2), v).value == doctest::Approx(exact).epsilon(1e-6));
        const double kr = kobayashi_royden(ModelDomain::euclidean_ball(2), v, cfg).value;
        CHECK(kr >= exact * (1.0 - 1e-9));
        CHECK(kr == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("property: homogeneity under complex scaling") {
    std::mt19937_64 rng(32);
    const SearchConfig cfg = quick_config();
    for (int i = 0; i < 4; ++i) {
        const ModelDomain D = i % 2 ? ModelDomain::euclidean_ball(2) : ModelDomain::polydisc(2);
        const CVec x = random_ball(rng, 2, 0.7), xi = random_ball(rng, 2, 1.0);
        const cplx c = testing_support::random_disc(rng, 3.0);
        const double a = azukawa(D, TangentVector(x, xi)).value;
        const double ac = azukawa(D, TangentVector(x, c * xi)).value;
        CHECK(std::abs(ac - std::abs(c) * a) <= 1e-10 * std::max(1.0, ac));
        const double k = kobayashi_royden(D, TangentVector(x, xi), cfg).value;
        const double kc = kobayashi_royden(D, TangentVector(x, c * xi), cfg).value;
        CHECK(std::abs(kc - std::abs(c) * k) <= 1e-10 * std::max(1.0, kc));
    }
}

TEST_CASE("Kobayashi-Royden does not increase under the embedding disc -> ball") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 4; ++i) {
        const cplx x = testing_support::random_disc(rng, 0.8), xi = testing_support::random_disc(rng, 1.0);
        const double disc = kobayashi_royden(ModelDomain::disc(), TangentVector(vec({x}), vec({xi})), quick_config()).value;
        const double ball =
            kobayashi_royden(ModelDomain::euclidean_ball(2), TangentVector(vec({x, 0}), vec({xi, 0})), quick_config()).value;
        CHECK(ball <= disc + 1e-4);
    }
}

TEST_CASE("both metrics agree with the Teichmuller metric of the torus") {
    // T(1,1) is the half-plane; carry tangent vectors to the disc with the Cayley map
    std::mt19937_64 rng(34);
    for (int i = 0; i < 5; ++i) {
        const cplx tau = testing_support::random_half_plane(rng);
        const cplx dtau = testing_support::random_disc(rng, 1.0);
        const cplx w = cayley(HalfPlanePoint(tau)).value();
        const cplx dw = 2.0 * cplx(0, 1) / ((tau + cplx(0, 1)) * (tau + cplx(0, 1))) * dtau;
        // d(tau, tau + h dtau) / h for small h
        const double h = 1e-7;
        const double teich =
            teich_distance(TorusModulus(tau), TorusModulus(tau + h * dtau)).d.value() / h;
        const TangentVector v(vec({w}), vec({dw}));
        CHECK(azukawa(ModelDomain::disc(), v).value == doctest::Approx(teich).epsilon(5e-3));
        CHECK(kobayashi_royden(ModelDomain::disc(), v, quick_config()).value == doctest::Approx(teich).epsilon(5e-3));
        CHECK(teich == doctest::Approx(std::abs(dtau) / (2.0 * tau.imag())).epsilon(1e-5));
    }
}

TEST_CASE("theorem2_check") {
    std::vector<TangentVector> samples;
    std::mt19937_64 rng(35);
    for (int i = 0; i < 5; ++i) samples.emplace_back(random_ball(rng, 1, 0.9), random_ball(rng, 1, 1.0));
    const auto rep = theorem2_check(ModelDomain::disc(), samples, {}, quick_config());
    CHECK(rep.pass);
    CHECK(rep.samples.size() == 5);
    CHECK(rep.max_discrepancy <= 5e-3);
    CHECK_THROWS_AS(theorem2_check(ModelDomain::disc(), {}, {}, quick_config()), std::invalid_argument);
}

#include <doctest.h>

#include <Eigen/SVD>

#include "green_teich/errors.hpp"
#include "green_teich/teich_torus.hpp"
#include "test_support.hpp"

using namespace gt;
using testing_support::random_half_plane;

namespace {

// The real-linear map of R^2 sending the lattice basis (1, x) to (1, y).
Eigen::Matrix2d lattice_map(cplx x, cplx y) {
    Eigen::Matrix2d M;
    M << 1.0, (y.real() - x.real()) / x.imag(), 0.0, y.imag() / x.imag();
    return M;
}

// |mu| = (K - 1) / (K + 1) with K the ratio of singular values
double dilatation_ref(cplx x, cplx y) {
    const Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix2d>(lattice_map(x, y)).singularValues();
    const double K = s(0) / s(1);
    return (K - 1.0) / (K + 1.0);
}

// Beltrami coefficient b / a of the same map written as a z + b conj(z)
cplx affine_beltrami_ref(cplx x, cplx y) {
    const Eigen::Matrix2d M = lattice_map(x, y);
    const cplx a(0.5 * (M(0, 0) + M(1, 1)), 0.5 * (M(1, 0) - M(0, 1)));
    const cplx b(0.5 * (M(0, 0) - M(1, 1)), 0.5 * (M(1, 0) + M(0, 1)));
    return b / a;
}

const cplx I(0.0, 1.0);

} // namespace

TEST_CASE("extremal Beltrami coefficients") {
    CHECK(std::abs(extremal_beltrami(TorusModulus(I), TorusModulus(I)).mu) == 0.0);
    CHECK(std::abs(extremal_beltrami(TorusModulus(I), TorusModulus(2.0 * I)).mu - 1.0 / 3.0) < 1e-15);
    const cplx mu = extremal_beltrami(TorusModulus(I), TorusModulus(1.0 + I)).mu;
    CHECK(std::abs(mu - 1.0 / (1.0 + 2.0 * I)) < 1e-15);
    CHECK(std::abs(mu) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(dilatation_ref(I, 2.0 * I) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("torus distance report") {
    const DistanceReport r = teich_distance(TorusModulus(I), TorusModulus(2.0 * I));
    CHECK(r.k == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(r.d.value() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
    CHECK(r.g.value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));

    const DistanceReport same = teich_distance(TorusModulus(cplx(0.3, 0.7)), TorusModulus(cplx(0.3, 0.7)));
    CHECK(same.k == 0.0);
    CHECK(same.d.value() == 0.0);
    CHECK(same.g.is_neg_inf());

    CHECK(teich_distance(TorusModulus(I), TorusModulus(1.0 + I)).d.value() == doctest::Approx(0.481212).epsilon(1e-6));
    CHECK_THROWS_AS(TorusModulus(cplx(1.0, -0.5)), DomainError);
    CHECK_THROWS_AS(TorusBeltrami(cplx(0.6, 0.8)), DomainError);
}

TEST_CASE("canonical projection") {
    CHECK(std::abs(canonical_projection(TorusBeltrami(0.0), TorusModulus(I)).value() - I) < 1e-15);
    CHECK(std::abs(canonical_projection(TorusBeltrami(-1.0 / 3.0), TorusModulus(I)).value() - 2.0 * I) < 1e-15);
    CHECK(std::abs(canonical_projection(TorusBeltrami(1.0 / 3.0), TorusModulus(I)).value() - 0.5 * I) < 1e-15);
}

TEST_CASE("lemma2 examples") {
    const Lemma2Report a = lemma2_check(TorusModulus(2.0 * I), TorusModulus(I));
    CHECK(a.pass);
    CHECK(a.teich_green.value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK(a.ball_green.value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
    const Lemma2Report b = lemma2_check(TorusModulus(0.5 * I), TorusModulus(I));
    CHECK(b.pass);
    CHECK(b.teich_green.value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(lemma2_check(TorusModulus(I), TorusModulus(I)), std::invalid_argument);
}

TEST_CASE("eq2 identity check") {
    const Eq2Report rep = eq2_identity_check(100, 7);
    CHECK(rep.pass);
    CHECK(rep.max_half_plane_discrepancy <= 1e-12);
    CHECK(rep.max_transform_discrepancy <= 1e-13);
    // the log tanh form against the half-plane Green function at (i, 2i)
    const DistanceReport r = teich_distance(TorusModulus(I), TorusModulus(2.0 * I));
    CHECK(eq2_transform(r.d).value() == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK(green_half_plane(HalfPlanePoint(2.0 * I), HalfPlanePoint(I)).value() ==
          doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-15));
    CHECK(eq2_transform(teich_distance(TorusModulus(I), TorusModulus(I)).d).is_neg_inf());
    CHECK_THROWS_AS(eq2_identity_check(0, 7), std::invalid_argument);
}

TEST_CASE("property: affine-map oracle, symmetry, projection round trip") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        const cplx x = random_half_plane(rng), y = random_half_plane(rng);
        const TorusModulus X(x), Y(y);
        const DistanceReport r = teich_distance(X, Y);
        CHECK(r.k == doctest::Approx(dilatation_ref(x, y)).epsilon(1e-9));
        // orientation: the lattice map x -> y carries the coefficient -extremal_beltrami(x, y)
        CHECK(std::abs(affine_beltrami_ref(x, y) + extremal_beltrami(X, Y).mu) < 1e-10);
        CHECK(std::abs(std::abs(r.witness_mu.mu) - r.k) <= 1e-12);
        CHECK(r.d.value() == doctest::Approx(0.5 * std::log((1 + r.k) / (1 - r.k))).epsilon(1e-12));
        CHECK(std::abs(teich_distance(Y, X).g.value() - r.g.value()) <= 1e-14 * std::max(1.0, std::abs(r.g.value())));

        CHECK(std::abs(canonical_projection(TorusBeltrami(-extremal_beltrami(X, Y).mu), X).value() - y) <=
              1e-12 * std::abs(y));

        const cplx mu = testing_support::random_disc(rng, 0.95);
        const TorusModulus image = canonical_projection(TorusBeltrami(mu), X);
        CHECK(image.value().imag() > 0.0);
        CHECK(std::abs(std::abs(extremal_beltrami(X, image).mu) - std::abs(mu)) <= 1e-12);
    }
}

TEST_CASE("property: invariance under real Mobius maps acting on both moduli") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
        double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
        const double det = a * d - b * c;
        if (std::abs(det) < 0.1) continue;
        if (det < 0) std::swap(a, b), std::swap(c, d);
        const double s = 1.0 / std::sqrt(std::abs(det));
        a *= s, b *= s, c *= s, d *= s;
        auto act = [&](cplx t) { return (a * t + b) / (c * t + d); };
        const cplx x = random_half_plane(rng), y = random_half_plane(rng);
        CHECK(teich_distance(TorusModulus(act(x)), TorusModulus(act(y))).k ==
              doctest::Approx(teich_distance(TorusModulus(x), TorusModulus(y)).k).epsilon(1e-12));
    }
}

TEST_CASE("random moduli stay in the sampling window") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        const cplx t = random_modulus(9, s).value();
        CHECK(t.real() >= -2.0);
        CHECK(t.real() <= 2.0);
        CHECK(t.imag() >= 0.2);
        CHECK(t.imag() <= 5.0);
    }
    CHECK(random_modulus(9, 3).value() == random_modulus(9, 3).value());
}

#include <doctest.h>

#include <numeric>

#include "green_teich/errors.hpp"
#include "green_teich/extremality.hpp"
#include "test_support.hpp"

using namespace gt;

namespace {

QuadratureConfig coarse() {
    QuadratureConfig q;
    q.torus_cells = 48;
    q.disc_radial = 48;
    q.disc_angular = 48;
    return q;
}

const cplx I(0.0, 1.0);

} // namespace

TEST_CASE("quadrature grids cover the reference domains") {
    const QuadratureGrid t = torus_grid(cplx(0.4, 1.3), 64);
    CHECK(t.nodes.size() == 64u * 64u);
    CHECK(std::accumulate(t.weights.begin(), t.weights.end(), 0.0) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(t.area == doctest::Approx(1.3));

    const QuadratureGrid d = disc_polar_grid(64, 64, 0.97);
    CHECK(std::accumulate(d.weights.begin(), d.weights.end(), 0.0) == doctest::Approx(M_PI).epsilon(1e-12));
    for (const cplx z : d.nodes) CHECK(std::abs(z) < 1.0);
}

TEST_CASE("pairing with constant fields on the torus") {
    CHECK(hk_functional(BeltramiField::constant(0.3), QuadDiffBasis::torus_constants()).value ==
          doctest::Approx(0.3).epsilon(1e-12));
    CHECK(hk_functional(BeltramiField::constant(0.0), QuadDiffBasis::torus_constants()).value == 0.0);
    CHECK(hk_functional(BeltramiField::constant(0.0), QuadDiffBasis::disc_monomials(3), coarse()).value == 0.0);

    const ExtremalityReport rep = is_extremal(BeltramiField::constant(0.3), QuadDiffBasis::torus_constants(), 1e-9);
    CHECK(rep.verdict == Verdict::extremal);
    CHECK(rep.hk_value == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(rep.provisional);

    const ExtremalityReport zero = is_extremal(BeltramiField::constant(0.0), QuadDiffBasis::torus_constants(), 1e-9);
    CHECK(zero.verdict == Verdict::extremal);
    CHECK(zero.hk_value == 0.0);
}

TEST_CASE("sign-alternating field on the torus") {
    const BeltramiField mu = torus_alternating_field(0.3);
    CHECK(mu.sup_norm() == 0.3);
    CHECK(hk_functional(mu, QuadDiffBasis::torus_constants()).value < 1e-15);
    const double enriched = hk_functional(mu, QuadDiffBasis::torus_monomials(3), coarse()).value;
    CHECK(enriched < 0.3);
    const ExtremalityReport rep = is_extremal(mu, QuadDiffBasis::torus_constants(), 1e-6);
    CHECK(rep.verdict == Verdict::not_extremal);
    CHECK_FALSE(rep.provisional);
}

TEST_CASE("disc Teichmuller differential and the angular pattern") {
    const ExtremalityReport t = is_extremal(disc_teichmuller_field(0.4), QuadDiffBasis::disc_monomials(6), 1e-6,
                                            1e-2, coarse());
    CHECK(t.verdict == Verdict::extremal);
    CHECK(t.hk_value <= 0.4 + 1e-9);

    const ExtremalityReport a =
        is_extremal(disc_angular4_field(0.4), QuadDiffBasis::disc_monomials(6), 1e-6, 1e-2, coarse());
    CHECK(a.hk_value < 0.4);
    CHECK(a.verdict == Verdict::not_extremal);
    CHECK(a.provisional);
    CHECK(a.note.find("truncated") != std::string::npos);
}

TEST_CASE("invariants of the pairing functional") {
    // common complex rescaling of the basis
    QuadDiffBasis basis = QuadDiffBasis::disc_monomials(3);
    QuadDiffBasis scaled = basis;
    for (auto& e : scaled.elements)
        for (auto& c : e) c *= cplx(-2.5, 1.5);
    const BeltramiField mu = disc_teichmuller_field(0.35);
    const double v = hk_functional(mu, basis, coarse()).value;
    CHECK(std::abs(hk_functional(mu, scaled, coarse()).value - v) <= 1e-12);

    // real scaling of the field
    const double half = hk_functional(mu.scaled(0.5), basis, coarse()).value;
    CHECK(std::abs(half - 0.5 * v) <= 1e-10);

    // never above the sup norm
    CHECK(hk_functional(BeltramiField::constant(std::polar(0.8, 1.0)), QuadDiffBasis::torus_constants()).value <=
          0.8 + 1e-9);
}

TEST_CASE("enlarging the basis never lowers the value") {
    // mu = 0.5 e^{-2 i theta} pairs only with z^2
    const BeltramiField mu = BeltramiField::sampled(
        [](cplx z) { return std::abs(z) > 0 ? 0.5 * std::conj(z * z) / std::norm(z) : cplx(0.0); }, 0.5, "e^{-2i theta}");
    std::vector<cplx> warm;
    double prev = 0.0;
    for (int d = 0; d <= 3; ++d) {
        const HkResult r = hk_functional(mu, QuadDiffBasis::disc_monomials(d), coarse(), warm);
        CHECK(r.value >= prev - 1e-12);
        prev = r.value;
        warm = r.coefficients;
        if (d < 2) CHECK(r.value < 1e-12);
    }
    CHECK(prev > 0.1);
}

TEST_CASE("constant torus coefficients realize the distance") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 20; ++i) {
        const cplx m = testing_support::random_disc(rng, 0.95);
        const TorusModulus base(testing_support::random_half_plane(rng));
        const TorusModulus image = canonical_projection(TorusBeltrami(m), base);
        CHECK(std::abs(teich_distance(base, image).k - std::abs(m)) <= 1e-12);
        CHECK(is_extremal(BeltramiField::constant(m), QuadDiffBasis::torus_constants(), 1e-9).verdict ==
              Verdict::extremal);
    }
}

TEST_CASE("pairing errors") {
    QuadDiffBasis zero = QuadDiffBasis::disc_monomials(1);
    for (auto& e : zero.elements)
        for (auto& c : e) c = 0.0;
    CHECK_THROWS_AS(hk_functional(BeltramiField::constant(0.2), zero, coarse()), DegenerateBasisError);
    QuadratureConfig tiny = coarse();
    tiny.torus_cells = 16;
    CHECK_THROWS_AS(hk_functional(BeltramiField::constant(0.2), QuadDiffBasis::torus_constants(), tiny),
                    std::invalid_argument);
    CHECK_THROWS_AS(BeltramiField::constant(1.0), DomainError);
    CHECK_THROWS_AS(disc_teichmuller_field(1.2), DomainError);
}

TEST_CASE("certificate along the ray") {
    const Theorem3Report r = theorem3_certificate_check(TorusBeltrami(0.3), TorusModulus(I), {0.1, 0.01, 0.001});
    CHECK(r.pass);
    for (const double q : r.ratios) CHECK(q == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.second_condition_value == doctest::Approx(0.3).epsilon(1e-12));

    const Theorem3Report one = theorem3_certificate_check(TorusBeltrami(cplx(0.1, -0.4)), TorusModulus(cplx(1, 2)), {0.5});
    CHECK(std::abs(one.ratios.front() - 1.0) <= 1e-15);

    CHECK_THROWS_AS(theorem3_certificate_check(TorusBeltrami(0.0), TorusModulus(I), {0.1}), std::invalid_argument);
    CHECK_THROWS_AS(theorem3_certificate_check(TorusBeltrami(0.3), TorusModulus(I), {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(theorem3_certificate_check(TorusBeltrami(0.3), TorusModulus(I), {1.5}), std::invalid_argument);
}

#include "green_teich/teich_torus.hpp"

#include <cmath>
#include <stdexcept>

#include "green_teich/domains.hpp"
#include "green_teich/errors.hpp"
#include "green_teich/optimize.hpp"

namespace gt {

TorusBeltrami::TorusBeltrami(cplx m) : mu(m) {
    if (!(std::abs(m) < 1.0)) throw DomainError("Beltrami coefficient must have modulus < 1");
}

TorusBeltrami extremal_beltrami(const TorusModulus& x, const TorusModulus& y) {
    const cplx a = x.value(), b = y.value();
    if (std::abs(a - b) <= kCoincidenceTol) return TorusBeltrami(0.0);
    return TorusBeltrami((b - a) / (b - std::conj(a)));
}

DistanceReport teich_distance(const TorusModulus& x, const TorusModulus& y) {
    const TorusBeltrami mu = extremal_beltrami(x, y);
    const double k = std::abs(mu.mu);
    return {k, HyperbolicDistance(std::atanh(k)), ExtendedReal::log_of(k), mu};
}

TorusModulus canonical_projection(const TorusBeltrami& mu, const TorusModulus& base) {
    const cplx t = base.value();
    return TorusModulus((t + mu.mu * std::conj(t)) / (1.0 + mu.mu));
}

Json DistanceReport::to_json() const {
    return {{"k", k}, {"d", d.value()}, {"g", gt::to_json(g)}, {"witness_mu", gt::to_json(witness_mu.mu)}};
}

Lemma2Report lemma2_check(const TorusModulus& x, const TorusModulus& base, double tolerance) {
    if (std::abs(x.value() - base.value()) <= kCoincidenceTol) {
        throw std::invalid_argument("lemma2_check requires x != base");
    }
    const DistanceReport rep = teich_distance(base, x);
    // the Beltrami ball M is the unit disc of constants under the sup norm
    CVec mu(1);
    mu(0) = rep.witness_mu.mu;
    const ExtendedReal ball = banach_ball_green(mu, CVec::Zero(1), 1.0, NormKind::sup);
    const TorusModulus image = canonical_projection(TorusBeltrami(-rep.witness_mu.mu), base);
    const double fiber = std::abs(image.value() - x.value());
    const double diff = ext_distance(rep.g, ball);
    return {rep.g, ball, rep.witness_mu, fiber, diff, diff <= tolerance && fiber <= 1e-12 * (1.0 + std::abs(x.value()))};
}

Json Lemma2Report::to_json() const {
    return {{"teich_green", gt::to_json(teich_green)},
            {"ball_green", gt::to_json(ball_green)},
            {"witness_mu", gt::to_json(witness.mu)},
            {"fiber_residual", fiber_residual},
            {"discrepancy", finite_or_tag(discrepancy)},
            {"pass", pass}};
}

TorusModulus random_modulus(std::uint64_t seed, std::uint64_t stream) {
    StreamRng rng(seed, stream);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
    return TorusModulus(cplx(a, b));
}

Eq2Report eq2_identity_check(int n_samples, std::uint64_t seed, double transform_tol, double half_plane_tol) {
    if (n_samples < 1) throw std::invalid_argument("eq2_identity_check needs n >= 1");
    Eq2Report rep{n_samples, seed, 0.0, 0.0, TorusModulus(cplx(0, 1)), TorusModulus(cplx(0, 1)), true};
    double worst = -1.0;
    for (int i = 0; i < n_samples; ++i) {
        const TorusModulus x = random_modulus(seed, 2 * static_cast<std::uint64_t>(i));
        const TorusModulus y = random_modulus(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        const DistanceReport r = teich_distance(x, y);
        const double via_transform = ext_distance(r.g, eq2_transform(r.d));
        const double via_half_plane = ext_distance(r.g, green_disc(cayley(x.tau), cayley(y.tau)));
        rep.max_transform_discrepancy = std::max(rep.max_transform_discrepancy, via_transform);
        rep.max_half_plane_discrepancy = std::max(rep.max_half_plane_discrepancy, via_half_plane);
        if (std::max(via_transform, via_half_plane) > worst) {
            worst = std::max(via_transform, via_half_plane);
            rep.worst_x = x;
            rep.worst_y = y;
        }
    }
    rep.pass = rep.max_transform_discrepancy <= transform_tol && rep.max_half_plane_discrepancy <= half_plane_tol;
    return rep;
}

Json Eq2Report::to_json() const {
    return {{"check", "eq2_identity"},
            {"samples", n_samples},
            {"seed", seed},
            {"max_transform_discrepancy", finite_or_tag(max_transform_discrepancy)},
            {"max_half_plane_discrepancy", finite_or_tag(max_half_plane_discrepancy)},
            {"worst_case", {{"tau1", gt::to_json(worst_x.value())}, {"tau2", gt::to_json(worst_y.value())}}},
            {"pass", pass}};
}

} // namespace gt

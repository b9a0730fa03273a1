#pragma once

// Teichmuller space of the torus. A marked flat torus is the lattice <1, tau>
// with tau in the upper half-plane; Beltrami coefficients are constants of
// modulus < 1, which is exactly the class of extremal ones on a torus.

#include <cstdint>

#include "green_teich/extended_real.hpp"
#include "green_teich/hyperbolic.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

struct TorusModulus {
    HalfPlanePoint tau;

    explicit TorusModulus(cplx t) : tau(t) {}
    cplx value() const { return tau.value(); }
};

struct TorusBeltrami {
    cplx mu;

    /// Throws DomainError unless |mu| < 1.
    explicit TorusBeltrami(cplx m);
};

struct DistanceReport {
    double k;
    HyperbolicDistance d;
    ExtendedReal g;
    TorusBeltrami witness_mu;

    Json to_json() const;
};

/// (y - x) / (y - conj x): the dilatation coefficient of the affine map
/// between the marked lattices, with the sign fixed so that
/// canonical_projection(-extremal_beltrami(x, y), x) == y.
TorusBeltrami extremal_beltrami(const TorusModulus& x, const TorusModulus& y);

/// k = |extremal_beltrami|, d = atanh k, g = log k.
DistanceReport teich_distance(const TorusModulus& x, const TorusModulus& y);

/// Lattice <1, tau> pushed forward by z -> z + mu conj(z), renormalized:
/// (tau + mu conj(tau)) / (1 + mu). For tau = i this is i (1 - mu) / (1 + mu).
TorusModulus canonical_projection(const TorusBeltrami& mu, const TorusModulus& base);

struct Lemma2Report {
    ExtendedReal teich_green;
    ExtendedReal ball_green;
    TorusBeltrami witness;
    /// |Phi(witness) - x|, showing the witness lies in the fiber over x.
    double fiber_residual;
    double discrepancy;
    bool pass;

    Json to_json() const;
};

/// g_T(x, base) against the Green function of the Beltrami ball at its center
/// evaluated at the extremal witness. Throws std::invalid_argument if x == base.
Lemma2Report lemma2_check(const TorusModulus& x, const TorusModulus& base, double tolerance = 1e-12);

struct Eq2Report {
    int n_samples;
    std::uint64_t seed;
    /// max |log k - log tanh d|
    double max_transform_discrepancy;
    /// max |log k - g_H| with g_H computed through the Cayley transform
    double max_half_plane_discrepancy;
    TorusModulus worst_x;
    TorusModulus worst_y;
    bool pass;

    Json to_json() const;
};

/// Random modulus: a + b i with a uniform in [-2, 2] and b log-uniform in [0.2, 5].
TorusModulus random_modulus(std::uint64_t seed, std::uint64_t stream);

/// Compares log k with log tanh d and with the half-plane Green function on
/// n random pairs.
Eq2Report eq2_identity_check(int n_samples, std::uint64_t seed, double transform_tol = 1e-13,
                             double half_plane_tol = 1e-12);

} // namespace gt

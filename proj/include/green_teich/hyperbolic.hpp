#pragma once

// Hyperbolic geometry of the unit disc and the upper half-plane.
//
// Distances use the curvature -4 normalization d = atanh(rho), so that the
// Green function of the disc is exactly log tanh d.

#include <complex>

#include "green_teich/extended_real.hpp"

namespace gt {

using cplx = std::complex<double>;

/// Points closer than this are treated as the same point when locating poles.
inline constexpr double kCoincidenceTol = 1e-12;

class DiscPoint {
public:
    /// Throws DomainError unless |value| < 1.
    explicit DiscPoint(cplx value);
    cplx value() const { return value_; }

private:
    cplx value_;
};

class HalfPlanePoint {
public:
    /// Throws DomainError unless Im value > 0.
    explicit HalfPlanePoint(cplx value);
    cplx value() const { return value_; }

private:
    cplx value_;
};

/// Nonnegative, possibly +inf.
class HyperbolicDistance {
public:
    explicit HyperbolicDistance(double value);
    double value() const { return value_; }

private:
    double value_;
};

/// |(x - y) / (1 - conj(y) x)|, in [0, 1).
double pseudo_hyperbolic_rho(DiscPoint x, DiscPoint y);

HyperbolicDistance disc_distance(DiscPoint x, DiscPoint y);

/// log rho(x, y); -inf at the pole.
ExtendedReal green_disc(DiscPoint x, DiscPoint y);

/// log tanh d, i.e. log((e^{2d} - 1) / (e^{2d} + 1)). Maps 0 to -inf and +inf to 0.
ExtendedReal eq2_transform(HyperbolicDistance d);

/// Cayley transform w = (z - i) / (z + i) and its inverse z = i (1 + w) / (1 - w).
DiscPoint cayley(HalfPlanePoint z);
HalfPlanePoint inverse_cayley(DiscPoint w);

/// Pseudo-hyperbolic distance on the half-plane, |(z - w) / (z - conj(w))|.
double half_plane_rho(HalfPlanePoint z, HalfPlanePoint w);

/// Green function of the upper half-plane, log |(z - w) / (z - conj(w))|.
ExtendedReal green_half_plane(HalfPlanePoint z, HalfPlanePoint w);

/// Disc automorphism z -> e^{i theta} (z - a) / (1 - conj(a) z).
struct DiscAutomorphism {
    cplx a;
    double theta = 0.0;

    cplx operator()(cplx z) const;
    DiscPoint operator()(DiscPoint z) const { return DiscPoint((*this)(z.value())); }
};

} // namespace gt

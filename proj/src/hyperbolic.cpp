#include "green_teich/hyperbolic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "green_teich/errors.hpp"

namespace gt {

namespace {

std::string describe(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

} // namespace

DiscPoint::DiscPoint(cplx value) : value_(value) {
    if (!(std::abs(value) < 1.0)) {
        throw DomainError("point " + describe(value) + " is not in the open unit disc");
    }
}

HalfPlanePoint::HalfPlanePoint(cplx value) : value_(value) {
    if (!(value.imag() > 0.0) || !std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw DomainError("point " + describe(value) + " is not in the upper half-plane");
    }
}

HyperbolicDistance::HyperbolicDistance(double value) : value_(value) {
    if (!(value >= 0.0)) throw std::invalid_argument("hyperbolic distance must be nonnegative");
}

double pseudo_hyperbolic_rho(DiscPoint x, DiscPoint y) {
    const cplx a = x.value();
    const cplx b = y.value();
    if (std::abs(a - b) <= kCoincidenceTol) return 0.0;
    // ratio of moduli, so that swapping the arguments gives the same bits
    const double rho = std::abs(a - b) / std::abs(1.0 - std::conj(b) * a);
    // rounding can only push rho up to 1 when both points hug the circle
    return std::min(rho, std::nextafter(1.0, 0.0));
}

HyperbolicDistance disc_distance(DiscPoint x, DiscPoint y) {
    return HyperbolicDistance(std::atanh(pseudo_hyperbolic_rho(x, y)));
}

ExtendedReal green_disc(DiscPoint x, DiscPoint y) {
    return ExtendedReal::log_of(pseudo_hyperbolic_rho(x, y));
}

ExtendedReal eq2_transform(HyperbolicDistance d) {
    const double v = d.value();
    if (v == 0.0) return ExtendedReal::neg_inf();
    if (std::isinf(v)) return ExtendedReal(0.0);
    // log tanh d = log(1 - 2/(e^{2d}+1)); the log1p form keeps accuracy for large d
    if (v > 0.5) return ExtendedReal(std::log1p(-2.0 / (std::exp(2.0 * v) + 1.0)));
    return ExtendedReal(std::log(std::tanh(v)));
}

DiscPoint cayley(HalfPlanePoint z) {
    const cplx i(0.0, 1.0);
    return DiscPoint((z.value() - i) / (z.value() + i));
}

HalfPlanePoint inverse_cayley(DiscPoint w) {
    const cplx i(0.0, 1.0);
    return HalfPlanePoint(i * (1.0 + w.value()) / (1.0 - w.value()));
}

double half_plane_rho(HalfPlanePoint z, HalfPlanePoint w) {
    if (std::abs(z.value() - w.value()) <= kCoincidenceTol) return 0.0;
    return std::abs((z.value() - w.value()) / (z.value() - std::conj(w.value())));
}

ExtendedReal green_half_plane(HalfPlanePoint z, HalfPlanePoint w) {
    return ExtendedReal::log_of(half_plane_rho(z, w));
}

cplx DiscAutomorphism::operator()(cplx z) const {
    return std::polar(1.0, theta) * (z - a) / (1.0 - std::conj(a) * z);
}

} // namespace gt

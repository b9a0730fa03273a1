#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gt {

using cplx = std::complex<double>;

struct Root {
    cplx value;
    int multiplicity = 1;
};

/// Horner evaluation of sum c_m z^m.
cplx poly_eval(std::span<const cplx> coeffs, cplx z);

/// All roots of sum c_m z^m from the eigenvalues of the companion matrix.
/// Trailing coefficients below 1e-14 relative to the largest are dropped
/// first. Roots closer than merge_tol are merged into one root whose
/// multiplicity is the cluster size. The zero polynomial has no roots
/// reported; callers decide how to treat it.
std::vector<Root> poly_roots(std::span<const cplx> coeffs, double merge_tol = 1e-7);

/// Coefficients of p(z) * (z - a).
std::vector<cplx> poly_mul_linear(std::span<const cplx> p, cplx a);

} // namespace gt

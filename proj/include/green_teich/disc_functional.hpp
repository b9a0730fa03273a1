#pragma once

// Analytic discs and the disc functional
//
//   upsilon_f(x, y) = sum_j k_j log |zeta_j|,  f(0) = x,  f(zeta_j) = y,
//
// whose infimum over discs in a domain is the Green function there. The
// search below returns that infimum over a finite-dimensional family, which is
// always an upper bound of the true Green function.

#include <cstdint>
#include <vector>

#include "green_teich/domains.hpp"
#include "green_teich/extended_real.hpp"

namespace gt {

/// f(zeta) = P(m(zeta)) with P(s) = sum c_m s^m and the disc automorphism
/// m(zeta) = (zeta + b) / (1 + conj(b) zeta), b = `mobius`. With b = 0 this is
/// the plain polynomial disc and f(0) = c_0.
struct AnalyticDisc {
    std::vector<CVec> coefficients;
    cplx mobius = 0.0;

    int dimension() const { return coefficients.empty() ? 0 : static_cast<int>(coefficients.front().size()); }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    CVec operator()(cplx zeta) const;
    /// P(s), the polynomial part alone.
    CVec polynomial_at(cplx s) const;
    /// Preimage parameter zeta of the polynomial argument s.
    cplx zeta_of(cplx s) const;
    cplx s_of(cplx zeta) const;
    /// f'(0)
    CVec derivative_at_origin() const;
};

struct Preimage {
    cplx zeta;
    int multiplicity;
};

struct PreimageSet {
    std::vector<Preimage> roots;
};

/// True iff the defining norm of f on n equispaced boundary samples stays
/// <= 1 - margin. Samples are equispaced in the polynomial argument, which
/// traces the same boundary curve as f. Requires n >= 64.
bool containment_check(const AnalyticDisc& f, const ModelDomain& D, int n_boundary_samples, double margin);

/// Solutions of f(zeta) = y with |zeta| < 1 - 1e-9, with multiplicities.
/// Throws DegenerateDiscError when f is constant and equal to y.
PreimageSet find_preimages(const AnalyticDisc& f, const CVec& y);

struct UpsilonValue {
    ExtendedReal value;
    /// False when y has no preimage in the disc (empty sum, value 0).
    bool informative;
    PreimageSet preimages;
};

/// Disc functional upsilon_f(x, y). Requires f(0) = x.
UpsilonValue evaluate_upsilon(const AnalyticDisc& f, const CVec& x, const CVec& y);

struct SearchConfig {
    int max_degree = 4;
    int n_starts = 16;
    int n_boundary_samples = 256;
    double margin = 1e-10;
    std::uint64_t seed = 0;
    /// Agreement tolerance against oracles.
    double tol = 1e-4;
    int max_evals = 1500;
    /// Starts and evaluation budget for each perturbation stage (degree >= 2).
    int refine_starts = 2;
    int refine_evals = 1500;
    int threads = 1;
};

struct DiscSearchResult {
    ExtendedReal estimate;
    AnalyticDisc witness;
    /// Best value after each degree stage 1..max_degree; nonincreasing.
    std::vector<double> stage_estimates;
    long evaluations = 0;
};

/// Infimum of upsilon_f(x, y) over Mobius-precomposed polynomial discs of
/// degree <= cfg.max_degree. Stage 1 searches the affine discs through the
/// complex line of x and y, scaled to touch the boundary; each later stage adds
/// a polynomial perturbation vanishing at 0 and at the preimage of y and
/// starts from the previous stage's best disc.
DiscSearchResult minimize_disc_functional(const ModelDomain& D, const CVec& x, const CVec& y,
                                          const SearchConfig& cfg);

/// Equispaced points e^{2 pi i k / n} on the unit circle.
std::vector<cplx> unit_circle_samples(int n);

/// Largest t with x + t v_k inside D (shrunk by margin) for every v_k.
double admissible_scale(const ModelDomain& D, const CVec& x, const std::vector<CVec>& boundary_values, double margin);

/// Maps R^2 onto the open unit disc, (p0, p1) -> p / sqrt(1 + |p|^2).
cplx to_unit_disc(double p0, double p1);
/// Inverse of to_unit_disc.
std::pair<double, double> from_unit_disc(cplx z);

} // namespace gt

#pragma once

// Numerical checks for plurisubharmonicity, monotonicity under holomorphic
// maps, and boundary behaviour of Green functions.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "green_teich/domains.hpp"
#include "green_teich/extended_real.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

struct ScalarField {
    std::string name;
    int dimension;
    std::function<ExtendedReal(const CVec&)> evaluate;
    /// Strict interior of the field's domain.
    std::function<bool(const CVec&)> contains;
};

/// g_D(., pole) from the domain's closed-form oracle.
ScalarField green_field(const ModelDomain& D, const CVec& pole);
/// log k(., pole) on the Teichmuller space of the torus (upper half-plane).
ScalarField torus_green_field(cplx pole);

/// Shared report shape: check name, sample count, worst case, PASS/FAIL.
struct CheckReport {
    std::string check;
    int samples = 0;
    bool pass = true;
    Json worst_case = Json::object();
    Json details = Json::object();

    Json to_json() const;
};

struct SubmeanResult {
    ExtendedReal lhs;
    ExtendedReal rhs;
    bool pass;
};

/// lhs = u(x), rhs = mean of u over x + r e^{i theta_k} xi for n equispaced
/// theta_k; passes iff lhs <= rhs + tol. A -inf sample makes rhs = -inf.
/// Throws DomainError when the circle leaves the field's domain.
SubmeanResult submean_check(const ScalarField& u, const CVec& x, const CVec& xi, double r, int n_samples = 64,
                            double tol = 1e-8);

struct HolomorphicMap {
    std::string name;
    std::function<CVec(const CVec&)> apply;
};

/// Property (i) reads g_target(h x, h y) <= g_source(x, y). The reversed
/// direction exists only so the harness can show it detects a wrong
/// orientation.
enum class ContractionDirection { non_increasing, non_decreasing };

using GreenFunction = std::function<ExtendedReal(const CVec&, const CVec&)>;

/// Pairs whose images coincide are skipped and counted. Throws DomainError
/// when h maps a sample outside `target_contains`.
CheckReport contraction_check(const GreenFunction& source, const GreenFunction& target, const HolomorphicMap& h,
                              const std::function<bool(const CVec&)>& target_contains,
                              const std::vector<std::pair<CVec, CVec>>& samples, double tol = 1e-9,
                              ContractionDirection direction = ContractionDirection::non_increasing);

using Path = std::function<CVec(double)>;

Path linear_path(const CVec& start, const CVec& boundary_point);
/// tau(s) = Re tau0 + i Im tau0 / (1 - s), running off to infinity.
Path half_plane_path_to_infinity(cplx tau0);
/// tau(s) = Re tau0 + i Im tau0 (1 - s), running down to the real axis.
Path half_plane_path_to_real_axis(cplx tau0);

/// n parameters from s_first to s_last with 1 - s shrinking geometrically.
std::vector<double> geometric_ladder(int n_steps, double s_first = 0.5, double s_last = 1.0 - 1e-8);

/// Checks u < 0 along the path, strictly increasing, with the last value
/// within tail_tol of 0.
CheckReport hyperconvexity_probe(const ScalarField& u, const Path& path, const std::vector<double>& params,
                                 double tail_tol = 1e-6);

} // namespace gt

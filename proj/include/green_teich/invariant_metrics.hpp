#pragma once

// Infinitesimal invariant metrics: the Azukawa metric read off the
// logarithmic pole of the Green function, and the Kobayashi-Royden metric from
// extremal discs.

#include <string>
#include <vector>

#include "green_teich/disc_functional.hpp"
#include "green_teich/domains.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

struct TangentVector {
    CVec base;
    CVec direction;

    /// Throws std::invalid_argument for a zero direction or mismatched sizes.
    TangentVector(CVec base, CVec direction);
};

/// Unit-norm representative of the direction with its phase fixed, so that
/// every complex multiple of a vector maps to the same canonical direction.
CVec canonical_direction(const CVec& direction);

struct LimitConfig {
    double lambda0 = 1e-2;
    int rungs = 6;
    /// Successive rungs further apart than this raise the non-convergence flag.
    double tol = 1e-2;
};

enum class GreenSource { oracle, estimator };
const char* to_string(GreenSource s);

struct AzukawaResult {
    double value;
    std::vector<double> ladder;
    /// Observed order of convergence of the ladder (log2 of successive difference ratios).
    double convergence_rate;
    bool converged;
    GreenSource source;
};

/// Extrapolated limit of exp(g_D(x + lambda xi, x)) / |lambda| along the
/// ladder lambda_k = lambda0 2^{-k}, Richardson on the last three rungs.
/// Throws DomainError when the first rung leaves the domain.
AzukawaResult azukawa(const ModelDomain& D, const TangentVector& v, const LimitConfig& cfg = {},
                      const SearchConfig& estimator_cfg = {});

struct KobayashiResult {
    double value;
    AnalyticDisc witness;
    long evaluations;
};

/// inf { 1/r : f(0) = x, f'(0) = r xi } over the Mobius-precomposed
/// polynomial discs. Each candidate shape is scaled until it touches the
/// boundary, so the returned value is an upper bound of the true metric.
KobayashiResult kobayashi_royden(const ModelDomain& D, const TangentVector& v, const SearchConfig& cfg = {});

struct MetricComparison {
    TangentVector sample;
    double azukawa;
    double kobayashi_royden;
    double discrepancy;
    GreenSource source;
};

struct Theorem2Report {
    std::vector<MetricComparison> samples;
    double max_discrepancy;
    double tolerance;
    bool pass;

    Json to_json() const;
};

/// Compares both metrics on every sample; PASS iff the largest discrepancy is <= tolerance.
Theorem2Report theorem2_check(const ModelDomain& D, const std::vector<TangentVector>& samples,
                              const LimitConfig& limit_cfg = {}, const SearchConfig& search_cfg = {},
                              double tolerance = 5e-3);

} // namespace gt

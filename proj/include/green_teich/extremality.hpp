#pragma once

// Extremality of Beltrami differentials through their pairing with integrable
// holomorphic quadratic differentials, and the log-plurisubharmonic
// certificate of extremality on the torus.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "green_teich/teich_torus.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

enum class ReferenceDomain { torus, disc };
const char* to_string(ReferenceDomain d);

/// Beltrami coefficient on a reference domain: a constant or a pointwise rule
/// sampled at the quadrature cells. sup_norm is the essential sup of |mu|.
class BeltramiField {
public:
    enum class Kind { constant, sampled };

    /// Throws DomainError unless |mu| < 1.
    static BeltramiField constant(cplx mu);
    /// Throws DomainError unless 0 <= sup_norm < 1.
    static BeltramiField sampled(std::function<cplx(cplx)> mu, double sup_norm, std::string label);

    Kind kind() const { return kind_; }
    double sup_norm() const { return sup_norm_; }
    const std::string& label() const { return label_; }
    cplx operator()(cplx z) const { return kind_ == Kind::constant ? constant_ : rule_(z); }
    /// Same field multiplied by a real factor.
    BeltramiField scaled(double c) const;

private:
    Kind kind_ = Kind::constant;
    cplx constant_ = 0.0;
    std::function<cplx(cplx)> rule_;
    double sup_norm_ = 0.0;
    std::string label_;
};

/// mu = k on the left half of the fundamental cell and -k on the right half.
BeltramiField torus_alternating_field(double k, cplx tau = cplx(0.0, 1.0));
/// Teichmuller differential k conj(phi) / |phi| on the disc with phi = 1.
BeltramiField disc_teichmuller_field(double k);
/// k e^{4 i theta}, the conjugate of the Teichmuller pattern of z^4.
BeltramiField disc_angular4_field(double k);

/// Span of holomorphic functions, each given by monomial coefficients in z.
struct QuadDiffBasis {
    ReferenceDomain domain;
    std::vector<std::vector<cplx>> elements;
    /// lattice modulus of the fundamental cell (torus only)
    cplx tau = cplx(0.0, 1.0);

    /// {1}: the whole space of integrable holomorphic quadratic differentials on the torus.
    static QuadDiffBasis torus_constants(cplx tau = cplx(0.0, 1.0));
    /// {1, z, ..., z^d} on the fundamental cell; only the constant is doubly periodic.
    static QuadDiffBasis torus_monomials(int degree, cplx tau = cplx(0.0, 1.0));
    /// {1, z, ..., z^d} on the unit disc.
    static QuadDiffBasis disc_monomials(int degree);

    /// True when the span is the full space of integrable holomorphic
    /// quadratic differentials (torus constants).
    bool is_complete() const;
};

struct QuadratureConfig {
    /// cells per side of the torus fundamental cell
    int torus_cells = 128;
    int disc_radial = 128;
    int disc_angular = 128;
    /// ratio of successive radial cell widths; cells shrink geometrically toward |z| = 1
    double radial_ratio = 0.97;
    int n_starts = 4;
    int max_evals = 2500;
    std::uint64_t seed = 0;
    int threads = 1;
};

struct QuadratureGrid {
    std::vector<cplx> nodes;
    std::vector<double> weights;
    double area = 0.0;
};

QuadratureGrid torus_grid(cplx tau, int cells);
QuadratureGrid disc_polar_grid(int radial, int angular, double radial_ratio);

struct HkResult {
    double value;
    std::vector<cplx> coefficients;
};

/// sup over phi in span(basis) of (1/2)|int mu phi dz^dzbar| / ||phi||_1 with
/// dz^dzbar = -2i dx dy, so the ratio is |int mu phi dxdy| / int |phi| dxdy.
/// warm_start (padded with zeros) is tried as an extra start.
HkResult hk_functional(const BeltramiField& mu, const QuadDiffBasis& basis, const QuadratureConfig& quad = {},
                       std::span<const cplx> warm_start = {});

enum class Verdict { extremal, not_extremal, inconclusive };
const char* to_string(Verdict v);

struct ExtremalityReport {
    double hk_value;
    double sup_norm;
    Verdict verdict;
    std::vector<cplx> achieving_coefficients;
    /// True when a not_extremal verdict rests on a truncated basis.
    bool provisional;
    double tol;
    double gap_bound;
    std::string note;

    Json to_json() const;
};

/// extremal iff hk >= sup - tol; not_extremal iff hk < sup - gap_bound;
/// inconclusive otherwise.
ExtremalityReport is_extremal(const BeltramiField& mu, const QuadDiffBasis& basis, double tol,
                              double gap_bound = 1e-2, const QuadratureConfig& quad = {});

struct Theorem3Report {
    std::vector<double> ladder;
    std::vector<double> ratios;
    double max_ratio_deviation;
    double second_condition_value;
    double second_condition_discrepancy;
    bool pass;

    Json to_json() const;
};

/// Certificate f(x) = k(x, base) = exp g_T(x, base). Checks f(Phi(t mu0/|mu0|))/t -> 1
/// along the ladder and f(Phi(mu0)) = |mu0|. Throws std::invalid_argument
/// for mu0 = 0 or a ladder outside (0, 1) or not decreasing.
Theorem3Report theorem3_certificate_check(const TorusBeltrami& mu0, const TorusModulus& base,
                                          const std::vector<double>& t_ladder, double ratio_tol = 1e-10,
                                          double value_tol = 1e-12);

} // namespace gt

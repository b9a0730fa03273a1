#pragma once

// Bounded model domains in C^n with closed-form Green-function oracles.

#include <Eigen/Core>
#include <optional>
#include <string>

#include "green_teich/extended_real.hpp"
#include "green_teich/hyperbolic.hpp"

namespace gt {

using CVec = Eigen::VectorXcd;

/// Defining norms within this distance of 1 are on the boundary.
inline constexpr double kBoundaryTol = 1e-10;

enum class DomainKind { disc, euclidean_ball, polydisc, banach_ball };
enum class NormKind { euclidean, sup, l1 };
enum class Membership { inside, boundary, outside };

const char* to_string(DomainKind k);
const char* to_string(NormKind k);

/// <a, b> = sum a_j conj(b_j)
cplx hermitian_dot(const CVec& a, const CVec& b);

double vector_norm(const CVec& v, NormKind norm);

class ModelDomain {
public:
    static ModelDomain disc();
    static ModelDomain euclidean_ball(int n);
    static ModelDomain polydisc(int n);
    static ModelDomain banach_ball(NormKind norm, CVec center, double radius);

    DomainKind kind() const { return kind_; }
    int dimension() const { return static_cast<int>(center_.size()); }
    NormKind norm() const { return norm_; }
    const CVec& center() const { return center_; }
    double radius() const { return radius_; }

    /// ||x - center|| / radius in the domain's norm; the domain is {< 1}.
    double defining_norm(const CVec& x) const;
    Membership classify(const CVec& x) const;
    /// Euclidean radius of a ball around the origin containing the domain.
    double circumscribing_radius() const;

    /// Throws DomainError unless x is strictly inside (not within kBoundaryTol of the boundary).
    void require_inside(const CVec& x, const char* what = "point") const;

    /// Largest t >= 0 with defining_norm(x + t v) <= 1 - margin. The domain is
    /// convex, so every smaller step stays admissible. +inf when v = 0.
    double max_step(const CVec& x, const CVec& v, double margin) const;
    /// Same as max_step with the offset w = x - center already formed.
    double max_step_offset(const CVec& w, const CVec& v, double margin) const;

    /// Closed-form Green function g(x, y) when one is known: disc, Euclidean
    /// ball, polydisc, and Banach balls with the pole at the center.
    std::optional<ExtendedReal> green_oracle(const CVec& x, const CVec& y) const;

    /// "kind=... dim=... norm=... radius=... center=..." text descriptor.
    std::string to_descriptor() const;
    /// Accepts the descriptor above or the shorthands disc, ballN, polydiscN.
    static ModelDomain parse(const std::string& text);

    friend bool operator==(const ModelDomain& a, const ModelDomain& b);

private:
    ModelDomain(DomainKind kind, NormKind norm, CVec center, double radius);

    DomainKind kind_;
    NormKind norm_;
    CVec center_;
    double radius_;
};

/// Ball automorphism phi_a: swaps a and 0, phi_a o phi_a = id.
CVec ball_automorphism(const CVec& a, const CVec& z);

HyperbolicDistance kobayashi_distance_ball(const CVec& x, const CVec& y);
ExtendedReal green_ball(const CVec& x, const CVec& y);
ExtendedReal green_polydisc(const CVec& x, const CVec& y);
/// log(||x - center|| / r), pole at the center.
ExtendedReal banach_ball_green(const CVec& x, const CVec& center, double r, NormKind norm);

} // namespace gt

#include "green_teich/psh_verify.hpp"

#include <cmath>

#include "green_teich/errors.hpp"
#include "green_teich/hyperbolic.hpp"
#include "green_teich/teich_torus.hpp"

namespace gt {

ScalarField green_field(const ModelDomain& D, const CVec& pole) {
    D.require_inside(pole, "pole");
    return {std::string("green:") + to_string(D.kind()), D.dimension(),
            [D, pole](const CVec& x) {
                auto g = D.green_oracle(x, pole);
                if (!g) throw std::invalid_argument("no closed-form Green function for this pole");
                return *g;
            },
            [D](const CVec& x) { return D.classify(x) == Membership::inside; }};
}

ScalarField torus_green_field(cplx pole) {
    const TorusModulus y(pole);
    return {"torus_log_k", 1,
            [y](const CVec& x) { return teich_distance(TorusModulus(x(0)), y).g; },
            [](const CVec& x) { return x(0).imag() > 0.0 && std::isfinite(x(0).real()); }};
}

Json CheckReport::to_json() const {
    return {{"check", check}, {"samples", samples}, {"worst_case", worst_case}, {"details", details}, {"pass", pass}};
}

SubmeanResult submean_check(const ScalarField& u, const CVec& x, const CVec& xi, double r, int n_samples,
                            double tol) {
    if (n_samples < 1 || !(r > 0.0)) throw std::invalid_argument("submean_check: need r > 0 and samples");
    if (!u.contains(x)) throw DomainError("submean_check: center lies outside the domain");
    std::vector<CVec> circle;
    circle.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const CVec z = x + (r * std::polar(1.0, 2.0 * M_PI * k / n_samples)) * xi;
        if (!u.contains(z)) throw DomainError("submean_check: the disc leaves the domain");
        circle.push_back(z);
    }
    const ExtendedReal lhs = u.evaluate(x);
    double sum = 0.0;
    bool hit_pole = false;
    for (const CVec& z : circle) {
        const ExtendedReal v = u.evaluate(z);
        if (v.is_neg_inf()) {
            hit_pole = true;
            break;
        }
        sum += v.value();
    }
    const ExtendedReal rhs = hit_pole ? ExtendedReal::neg_inf() : ExtendedReal(sum / n_samples);
    bool pass;
    if (rhs.is_neg_inf()) pass = lhs.is_neg_inf();
    else pass = lhs.is_neg_inf() || lhs.value() <= rhs.value() + tol;
    return {lhs, rhs, pass};
}

CheckReport contraction_check(const GreenFunction& source, const GreenFunction& target, const HolomorphicMap& h,
                              const std::function<bool(const CVec&)>& target_contains,
                              const std::vector<std::pair<CVec, CVec>>& samples, double tol,
                              ContractionDirection direction) {
    CheckReport rep;
    rep.check = "contraction:" + h.name;
    int skipped = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : samples) {
        const CVec hx = h.apply(x), hy = h.apply(y);
        if (!target_contains(hx) || !target_contains(hy)) throw DomainError("contraction_check: map leaves the target");
        if ((hx - hy).norm() <= kCoincidenceTol) {
            ++skipped;
            continue;
        }
        const ExtendedReal gs = source(x, y);
        const ExtendedReal gt_ = target(hx, hy);
        // violation > 0 means the requested inequality fails
        double violation;
        if (direction == ContractionDirection::non_increasing) {
            violation = gs.is_neg_inf() ? (gt_.is_neg_inf() ? 0.0 : INFINITY) : gt_.value() - gs.value();
        } else {
            violation = gt_.is_neg_inf() ? (gs.is_neg_inf() ? 0.0 : INFINITY) : gs.value() - gt_.value();
        }
        ++rep.samples;
        if (violation > worst) {
            worst = violation;
            rep.worst_case = {{"x", to_json(x)},
                              {"y", to_json(y)},
                              {"g_source", to_json(gs)},
                              {"g_target", to_json(gt_)},
                              {"violation", finite_or_tag(violation)}};
        }
        if (violation > tol) rep.pass = false;
    }
    rep.details = {{"direction", direction == ContractionDirection::non_increasing ? "non_increasing" : "non_decreasing"},
                   {"skipped_degenerate_pairs", skipped},
                   {"tol", tol}};
    return rep;
}

Path linear_path(const CVec& start, const CVec& boundary_point) {
    return [start, boundary_point](double s) { return CVec(start + s * (boundary_point - start)); };
}

Path half_plane_path_to_infinity(cplx tau0) {
    return [tau0](double s) {
        CVec v(1);
        v(0) = cplx(tau0.real(), tau0.imag() / (1.0 - s));
        return v;
    };
}

Path half_plane_path_to_real_axis(cplx tau0) {
    return [tau0](double s) {
        CVec v(1);
        v(0) = cplx(tau0.real(), tau0.imag() * (1.0 - s));
        return v;
    };
}

std::vector<double> geometric_ladder(int n_steps, double s_first, double s_last) {
    if (n_steps < 2 || !(s_first < s_last) || !(s_last < 1.0)) throw std::invalid_argument("geometric_ladder: bad range");
    const double ratio = std::pow((1.0 - s_last) / (1.0 - s_first), 1.0 / (n_steps - 1));
    std::vector<double> s(n_steps);
    for (int k = 0; k < n_steps; ++k) s[k] = 1.0 - (1.0 - s_first) * std::pow(ratio, k);
    s.back() = s_last;
    return s;
}

CheckReport hyperconvexity_probe(const ScalarField& u, const Path& path, const std::vector<double>& params,
                                 double tail_tol) {
    CheckReport rep;
    rep.check = "hyperconvexity:" + u.name;
    Json values = Json::array();
    ExtendedReal prev = ExtendedReal::neg_inf();
    bool negative = true, increasing = true;
    for (size_t k = 0; k < params.size(); ++k) {
        const CVec z = path(params[k]);
        if (!u.contains(z)) throw DomainError("hyperconvexity_probe: path leaves the domain");
        const ExtendedReal v = u.evaluate(z);
        values.push_back(to_json(v));
        negative = negative && v.value() < 0.0;
        if (k > 0 && !(v > prev)) increasing = false;
        prev = v;
        ++rep.samples;
    }
    const bool tail = !prev.is_neg_inf() && std::abs(prev.value()) <= tail_tol;
    rep.pass = negative && increasing && tail;
    rep.worst_case = {{"last_value", to_json(prev)}};
    Json tail_values = Json::array();
    for (size_t k = values.size() >= 3 ? values.size() - 3 : 0; k < values.size(); ++k) tail_values.push_back(values[k]);
    rep.details = {{"negative", negative},
                   {"increasing", increasing},
                   {"tail_to_zero", tail},
                   {"tail_values", tail_values},
                   {"tail_tol", tail_tol}};
    return rep;
}

} // namespace gt

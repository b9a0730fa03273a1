#include "green_teich/extremality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "green_teich/errors.hpp"
#include "green_teich/optimize.hpp"
#include "green_teich/polynomial.hpp"

namespace gt {

const char* to_string(ReferenceDomain d) { return d == ReferenceDomain::torus ? "torus" : "disc"; }

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::extremal: return "extremal";
    case Verdict::not_extremal: return "not_extremal";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

BeltramiField BeltramiField::constant(cplx mu) {
    if (!(std::abs(mu) < 1.0)) throw DomainError("Beltrami coefficient must have sup norm < 1");
    BeltramiField f;
    f.kind_ = Kind::constant;
    f.constant_ = mu;
    f.sup_norm_ = std::abs(mu);
    f.label_ = "constant";
    return f;
}

BeltramiField BeltramiField::sampled(std::function<cplx(cplx)> mu, double sup_norm, std::string label) {
    if (!(sup_norm >= 0.0 && sup_norm < 1.0)) throw DomainError("Beltrami coefficient must have sup norm < 1");
    BeltramiField f;
    f.kind_ = Kind::sampled;
    f.rule_ = std::move(mu);
    f.sup_norm_ = sup_norm;
    f.label_ = std::move(label);
    return f;
}

BeltramiField BeltramiField::scaled(double c) const {
    if (kind_ == Kind::constant) return constant(c * constant_);
    auto rule = rule_;
    return sampled([rule, c](cplx z) { return c * rule(z); }, std::abs(c) * sup_norm_, label_);
}

BeltramiField torus_alternating_field(double k, cplx tau) {
    return BeltramiField::sampled(
        [k, tau](cplx z) {
            const double v = z.imag() / tau.imag();
            const double u = z.real() - v * tau.real();
            return cplx(u - std::floor(u) < 0.5 ? k : -k);
        },
        std::abs(k), "alternating");
}

BeltramiField disc_teichmuller_field(double k) {
    // phi = 1, so conj(phi) / |phi| = 1
    return BeltramiField::sampled([k](cplx) { return cplx(k); }, std::abs(k), "teichmuller");
}

BeltramiField disc_angular4_field(double k) {
    return BeltramiField::sampled(
        [k](cplx z) {
            const double r = std::abs(z);
            if (r == 0.0) return cplx(k);
            const cplx w = z / r;
            return k * w * w * w * w;
        },
        std::abs(k), "angular4");
}

QuadDiffBasis QuadDiffBasis::torus_constants(cplx tau) { return {ReferenceDomain::torus, {{cplx(1.0)}}, tau}; }

QuadDiffBasis QuadDiffBasis::torus_monomials(int degree, cplx tau) {
    QuadDiffBasis b{ReferenceDomain::torus, {}, tau};
    for (int m = 0; m <= degree; ++m) {
        std::vector<cplx> e(m + 1, cplx(0.0));
        e[m] = 1.0;
        b.elements.push_back(e);
    }
    return b;
}

QuadDiffBasis QuadDiffBasis::disc_monomials(int degree) {
    QuadDiffBasis b = torus_monomials(degree);
    b.domain = ReferenceDomain::disc;
    return b;
}

bool QuadDiffBasis::is_complete() const {
    if (domain != ReferenceDomain::torus) return false;
    // only constants are doubly periodic; a basis spanning them spans everything
    for (const auto& e : elements) {
        bool constant = true;
        for (size_t m = 1; m < e.size(); ++m) constant = constant && e[m] == cplx(0.0);
        if (!constant) return false;
    }
    return !elements.empty();
}

QuadratureGrid torus_grid(cplx tau, int cells) {
    if (cells < 1 || !(tau.imag() > 0.0)) throw std::invalid_argument("torus_grid: bad lattice or cell count");
    QuadratureGrid g;
    const double w = tau.imag() / (static_cast<double>(cells) * cells);
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            g.nodes.push_back((i + 0.5) / cells + ((j + 0.5) / cells) * tau);
            g.weights.push_back(w);
        }
    g.area = tau.imag();
    return g;
}

QuadratureGrid disc_polar_grid(int radial, int angular, double ratio) {
    if (radial < 1 || angular < 1 || !(ratio > 0.0 && ratio <= 1.0)) {
        throw std::invalid_argument("disc_polar_grid: bad resolution");
    }
    std::vector<double> edges(radial + 1);
    for (int i = 0; i <= radial; ++i) {
        edges[i] = ratio == 1.0 ? static_cast<double>(i) / radial
                                : (1.0 - std::pow(ratio, i)) / (1.0 - std::pow(ratio, radial));
    }
    edges[radial] = 1.0;
    QuadratureGrid g;
    const double dtheta = 2.0 * M_PI / angular;
    for (int i = 0; i < radial; ++i) {
        const double r = 0.5 * (edges[i] + edges[i + 1]);
        const double w = 0.5 * (edges[i + 1] * edges[i + 1] - edges[i] * edges[i]) * dtheta;
        for (int j = 0; j < angular; ++j) {
            g.nodes.push_back(std::polar(r, (j + 0.5) * dtheta));
            g.weights.push_back(w);
            g.area += w;
        }
    }
    return g;
}

HkResult hk_functional(const BeltramiField& mu, const QuadDiffBasis& basis, const QuadratureConfig& quad,
                       std::span<const cplx> warm_start) {
    if (basis.elements.empty()) throw std::invalid_argument("hk_functional: empty basis");
    if (basis.domain == ReferenceDomain::torus && quad.torus_cells < 32) {
        throw std::invalid_argument("hk_functional: quadrature needs at least 32x32 cells");
    }
    if (basis.domain == ReferenceDomain::disc && (quad.disc_radial < 32 || quad.disc_angular < 32)) {
        throw std::invalid_argument("hk_functional: quadrature needs at least 32x32 cells");
    }
    const QuadratureGrid grid = basis.domain == ReferenceDomain::torus
                                    ? torus_grid(basis.tau, quad.torus_cells)
                                    : disc_polar_grid(quad.disc_radial, quad.disc_angular, quad.radial_ratio);

    const Eigen::Index n_nodes = static_cast<Eigen::Index>(grid.nodes.size());
    const Eigen::Index m = static_cast<Eigen::Index>(basis.elements.size());
    Eigen::MatrixXcd E(n_nodes, m);
    Eigen::VectorXd w(n_nodes);
    Eigen::VectorXcd mu_w(n_nodes);
    for (Eigen::Index i = 0; i < n_nodes; ++i) {
        w(i) = grid.weights[i];
        mu_w(i) = mu(grid.nodes[i]) * grid.weights[i];
        for (Eigen::Index j = 0; j < m; ++j) E(i, j) = poly_eval(basis.elements[j], grid.nodes[i]);
    }
    const Eigen::VectorXcd pairing = E.transpose() * mu_w;  // int mu e_j
    Eigen::VectorXd l1(m);
    for (Eigen::Index j = 0; j < m; ++j) l1(j) = w.dot(E.col(j).cwiseAbs());
    if (l1.maxCoeff() < 1e-12) throw DegenerateBasisError("every basis element has vanishing L1 norm");

    auto ratio_of = [&](const Eigen::VectorXcd& c) {
        const double den = w.dot((E * c).cwiseAbs());
        if (!(den > 1e-300)) return 0.0;
        return std::abs((pairing.array() * c.array()).sum()) / den;
    };
    auto to_vec = [m](const std::vector<double>& p) {
        Eigen::VectorXcd c(m);
        for (Eigen::Index j = 0; j < m; ++j) c(j) = {p[2 * j], p[2 * j + 1]};
        return c;
    };
    // scale to unit L1 norm and make the pairing real and nonnegative
    auto normalize = [&](Eigen::VectorXcd c) {
        const double den = w.dot((E * c).cwiseAbs());
        if (den > 0.0) c /= den;
        const cplx p = (pairing.array() * c.array()).sum();
        if (std::abs(p) > 0.0) c *= std::conj(p) / std::abs(p);
        return c;
    };

    std::vector<Eigen::VectorXcd> starts;
    if (!warm_start.empty()) {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(m);
        for (size_t j = 0; j < warm_start.size() && static_cast<Eigen::Index>(j) < m; ++j) c(j) = warm_start[j];
        if (c.norm() > 0.0) starts.push_back(c);
    }
    for (Eigen::Index j = 0; j < m; ++j) {
        if (l1(j) < 1e-12) continue;
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(m);
        c(j) = 1.0 / l1(j);
        starts.push_back(c);
    }
    if (m > 1) {
        for (int i = 0; i < quad.n_starts; ++i) {
            StreamRng rng(quad.seed, 50000 + static_cast<std::uint64_t>(i));
            Eigen::VectorXcd c(m);
            for (Eigen::Index j = 0; j < m; ++j) c(j) = cplx(rng.normal(), rng.normal()) / std::max(l1(j), 1e-12);
            starts.push_back(c);
        }
    }

    struct Cand {
        double value;
        Eigen::VectorXcd c;
    };
    auto cands = run_indexed<Cand>(static_cast<int>(starts.size()), quad.threads, [&](int i) {
        const Eigen::VectorXcd c0 = normalize(starts[i]);
        if (m == 1) return Cand{ratio_of(c0), c0};
        std::vector<double> p0(2 * m);
        double size = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            p0[2 * j] = c0(j).real();
            p0[2 * j + 1] = c0(j).imag();
            size = std::max(size, std::abs(c0(j)));
        }
        auto f = [&](const std::vector<double>& p) { return -ratio_of(to_vec(p)); };
        std::vector<double> step(2 * m, 0.2 * size);
        NelderMeadResult r = nelder_mead(f, p0, step, {quad.max_evals, 1e-13, 1e-9});
        const Eigen::VectorXcd c1 = normalize(to_vec(r.x));
        for (auto& s : step) s *= 0.01;
        std::vector<double> p1(2 * m);
        for (Eigen::Index j = 0; j < m; ++j) {
            p1[2 * j] = c1(j).real();
            p1[2 * j + 1] = c1(j).imag();
        }
        NelderMeadResult r2 = nelder_mead(f, p1, step, {quad.max_evals / 2, 1e-13, 1e-9});
        const Eigen::VectorXcd c2 = normalize(to_vec(r2.x));
        const double v1 = ratio_of(c1), v2 = ratio_of(c2);
        return v2 >= v1 ? Cand{v2, c2} : Cand{v1, c1};
    });

    Cand best = cands.front();
    auto lex_greater = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
        for (Eigen::Index j = 0; j < a.size(); ++j) {
            if (a(j).real() != b(j).real()) return a(j).real() > b(j).real();
            if (a(j).imag() != b(j).imag()) return a(j).imag() > b(j).imag();
        }
        return false;
    };
    for (const Cand& c : cands) {
        if (c.value > best.value || (c.value == best.value && lex_greater(c.c, best.c))) best = c;
    }
    return {best.value, std::vector<cplx>(best.c.data(), best.c.data() + best.c.size())};
}

ExtremalityReport is_extremal(const BeltramiField& mu, const QuadDiffBasis& basis, double tol, double gap_bound,
                              const QuadratureConfig& quad) {
    if (!(tol > 0.0)) throw std::invalid_argument("is_extremal: tol must be positive");
    const HkResult hk = hk_functional(mu, basis, quad);
    ExtremalityReport rep{hk.value, mu.sup_norm(), Verdict::inconclusive, hk.coefficients, false, tol, gap_bound, ""};
    if (hk.value >= mu.sup_norm() - tol) {
        rep.verdict = Verdict::extremal;
        rep.note = "pairing reaches the sup norm";
    } else if (hk.value < mu.sup_norm() - gap_bound) {
        rep.verdict = Verdict::not_extremal;
        rep.provisional = !basis.is_complete();
        rep.note = rep.provisional ? "truncated basis: a larger basis may still reach the sup norm"
                                   : "basis spans all integrable holomorphic quadratic differentials";
    } else {
        rep.note = "pairing within the quadrature and truncation gap of the sup norm";
    }
    return rep;
}

Json ExtremalityReport::to_json() const {
    Json coeffs = Json::array();
    for (const cplx& c : achieving_coefficients) coeffs.push_back(gt::to_json(c));
    return {{"check", "extremality"},
            {"hk_value", hk_value},
            {"sup_norm", sup_norm},
            {"verdict", to_string(verdict)},
            {"provisional", provisional},
            {"achieving_coefficients", coeffs},
            {"tol", tol},
            {"gap_bound", gap_bound},
            {"note", note}};
}

Theorem3Report theorem3_certificate_check(const TorusBeltrami& mu0, const TorusModulus& base,
                                          const std::vector<double>& t_ladder, double ratio_tol, double value_tol) {
    const double norm = std::abs(mu0.mu);
    if (!(norm > 0.0)) throw std::invalid_argument("theorem3_certificate_check requires mu0 != 0");
    if (t_ladder.empty()) throw std::invalid_argument("theorem3_certificate_check: empty ladder");
    for (size_t i = 0; i < t_ladder.size(); ++i) {
        if (!(t_ladder[i] > 0.0 && t_ladder[i] < 1.0)) throw std::invalid_argument("ladder values must lie in (0, 1)");
        if (i > 0 && !(t_ladder[i] < t_ladder[i - 1])) throw std::invalid_argument("ladder must be decreasing");
    }
    const cplx unit = mu0.mu / norm;
    auto certificate = [&](const TorusModulus& x) { return teich_distance(x, base).k; };

    Theorem3Report rep{t_ladder, {}, 0.0, 0.0, 0.0, true};
    for (double t : t_ladder) {
        const double ratio = certificate(canonical_projection(TorusBeltrami(t * unit), base)) / t;
        rep.ratios.push_back(ratio);
        rep.max_ratio_deviation = std::max(rep.max_ratio_deviation, std::abs(ratio - 1.0));
    }
    rep.second_condition_value = certificate(canonical_projection(mu0, base));
    rep.second_condition_discrepancy = std::abs(rep.second_condition_value - norm);
    rep.pass = rep.max_ratio_deviation <= ratio_tol && rep.second_condition_discrepancy <= value_tol;
    return rep;
}

Json Theorem3Report::to_json() const {
    return {{"check", "theorem3_certificate"},
            {"ladder", ladder},
            {"ratios", ratios},
            {"max_ratio_deviation", max_ratio_deviation},
            {"second_condition_value", second_condition_value},
            {"second_condition_discrepancy", second_condition_discrepancy},
            {"pass", pass}};
}

} // namespace gt

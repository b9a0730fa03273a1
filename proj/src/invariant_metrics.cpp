#include "green_teich/invariant_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "green_teich/errors.hpp"
#include "green_teich/optimize.hpp"

namespace gt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScaleSafety = 1.0 - 1e-12;

// coefficients of p(s) * (s - a) for a vector polynomial
std::vector<CVec> mul_linear(const std::vector<CVec>& p, cplx a, int n) {
    std::vector<CVec> out(p.size() + 1, CVec::Zero(n));
    for (size_t m = 0; m < p.size(); ++m) {
        out[m + 1] += p[m];
        out[m] -= a * p[m];
    }
    return out;
}

struct Shape {
    cplx gamma;
    std::vector<CVec> R;
};

// Q(s) = xi (s - gamma) + (s - gamma)^2 R(s), in monomial coefficients.
std::vector<CVec> shape_coefficients(const Shape& sh, const CVec& xi) {
    const int n = static_cast<int>(xi.size());
    std::vector<CVec> q(2, CVec::Zero(n));
    q[0] = -sh.gamma * xi;
    q[1] = xi;
    if (!sh.R.empty()) {
        const std::vector<CVec> bump = mul_linear(mul_linear(sh.R, sh.gamma, n), sh.gamma, n);
        q.resize(std::max(q.size(), bump.size()), CVec::Zero(n));
        for (size_t m = 0; m < bump.size(); ++m) q[m] += bump[m];
    }
    return q;
}

CVec eval_coeffs(const std::vector<CVec>& c, cplx s) {
    CVec acc = CVec::Zero(c.front().size());
    for (size_t m = c.size(); m-- > 0;) acc = acc * s + c[m];
    return acc;
}

} // namespace

TangentVector::TangentVector(CVec b, CVec d) : base(std::move(b)), direction(std::move(d)) {
    if (base.size() != direction.size()) throw std::invalid_argument("tangent vector: dimension mismatch");
    if (direction.norm() == 0.0) throw std::invalid_argument("tangent vector: direction must be nonzero");
}

CVec canonical_direction(const CVec& direction) {
    const double len = direction.norm();
    Eigen::Index j = 0;
    while (std::abs(direction(j)) < 1e-3 * len) ++j;
    const cplx phase = std::conj(direction(j)) / std::abs(direction(j));
    return direction * (phase / len);
}

const char* to_string(GreenSource s) { return s == GreenSource::oracle ? "oracle" : "estimator"; }

AzukawaResult azukawa(const ModelDomain& D, const TangentVector& v, const LimitConfig& cfg,
                      const SearchConfig& estimator_cfg) {
    if (cfg.rungs < 3) throw std::invalid_argument("azukawa needs at least three rungs");
    D.require_inside(v.base, "base point");
    const double len = v.direction.norm();
    const CVec xi = canonical_direction(v.direction);
    if (D.classify(v.base + cfg.lambda0 * xi) != Membership::inside) {
        throw DomainError("azukawa ladder leaves the domain at the first rung");
    }

    AzukawaResult res{0.0, {}, 0.0, true, GreenSource::oracle};
    for (int k = 0; k < cfg.rungs; ++k) {
        const double lambda = cfg.lambda0 * std::ldexp(1.0, -k);
        const CVec z = v.base + lambda * xi;
        ExtendedReal g;
        if (auto oracle = D.green_oracle(z, v.base)) {
            g = *oracle;
        } else {
            res.source = GreenSource::estimator;
            g = minimize_disc_functional(D, z, v.base, estimator_cfg).estimate;
        }
        res.ladder.push_back(g.exp() / lambda);
    }
    const auto& A = res.ladder;
    const size_t k = A.size() - 1;
    const double r1a = 2.0 * A[k - 1] - A[k - 2];
    const double r1b = 2.0 * A[k] - A[k - 1];
    res.value = len * (4.0 * r1b - r1a) / 3.0;

    const double d_prev = std::abs(A[k - 1] - A[k - 2]);
    const double d_last = std::abs(A[k] - A[k - 1]);
    res.convergence_rate = d_last > 0.0 ? std::log2(d_prev / d_last) : kInf;
    res.converged = d_last <= cfg.tol;
    return res;
}

KobayashiResult kobayashi_royden(const ModelDomain& D, const TangentVector& v, const SearchConfig& cfg) {
    D.require_inside(v.base, "base point");
    const int n = D.dimension();
    const CVec& x = v.base;
    const double len = v.direction.norm();
    const CVec xi = canonical_direction(v.direction);
    const std::vector<cplx> circle = unit_circle_samples(cfg.n_boundary_samples);

    // -log of the achievable |f'(0)| for the shape scaled to touch the boundary
    auto score = [&](const Shape& sh, double* scale_out) {
        const std::vector<CVec> q = shape_coefficients(sh, xi);
        std::vector<CVec> vals;
        vals.reserve(circle.size());
        for (const cplx& s : circle) vals.push_back(eval_coeffs(q, s));
        const double t = admissible_scale(D, x, vals, cfg.margin) * kScaleSafety;
        if (scale_out) *scale_out = t;
        if (!std::isfinite(t) || t <= 0.0) return kInf;
        return -std::log(t * (1.0 - std::norm(sh.gamma)));
    };

    struct Cand {
        double value;
        Shape shape;
        long evals;
    };
    auto reduce = [](std::vector<Cand> cs) {
        Cand best = cs.front();
        long evals = 0;
        for (const Cand& c : cs) {
            evals += c.evals;
            if (c.value < best.value) best = c;
        }
        best.evals = evals;
        return best;
    };
    NelderMeadOptions nm;
    nm.f_tol = 1e-15;
    nm.x_tol = 1e-13;

    long evaluations = 0;
    Cand best{kInf, {}, 0};
    for (int degree = 1; degree <= std::max(1, cfg.max_degree); ++degree) {
        const int n_r = degree - 1;
        const Shape start = best.shape;
        auto decode = [&](const std::vector<double>& p) {
            Shape sh;
            sh.gamma = to_unit_disc(p[0], p[1]);
            sh.R.assign(n_r, CVec::Zero(n));
            size_t k = 2;
            for (int m = 0; m < n_r; ++m)
                for (int j = 0; j < n; ++j, k += 2) sh.R[m](j) = {p[k], p[k + 1]};
            return sh;
        };
        auto objective = [&](const std::vector<double>& p) { return score(decode(p), nullptr); };
        const int starts = degree == 1 ? cfg.n_starts : std::max(1, cfg.refine_starts);
        const int budget = degree == 1 ? cfg.max_evals : cfg.refine_evals;

        auto cands = run_indexed<Cand>(starts, cfg.threads, [&](int i) {
            StreamRng rng(cfg.seed, 7000003ULL * static_cast<std::uint64_t>(degree) + static_cast<std::uint64_t>(i));
            std::vector<double> p0;
            if (degree == 1) {
                const cplx g = i == 0 ? cplx(0.0) : std::polar(0.85 * std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform());
                auto [a, b] = from_unit_disc(g);
                p0 = {a, b};
            } else {
                auto [a, b] = from_unit_disc(start.gamma);
                p0 = {a, b};
                for (int m = 0; m < n_r; ++m)
                    for (int j = 0; j < n; ++j) {
                        cplx c = m < static_cast<int>(start.R.size()) ? start.R[m](j) : cplx(0.0);
                        if (i > 0) c += 1e-2 * cplx(rng.normal(), rng.normal());
                        p0.push_back(c.real());
                        p0.push_back(c.imag());
                    }
            }
            const double step = degree == 1 ? 0.3 : 0.02;
            NelderMeadResult r = nelder_mead(objective, p0, std::vector<double>(p0.size(), step), {budget, nm.f_tol, nm.x_tol});
            NelderMeadResult r2 =
                nelder_mead(objective, r.x, std::vector<double>(p0.size(), 0.01 * step), {budget / 2, nm.f_tol, nm.x_tol});
            const long evals = r.evals + r2.evals;
            if (r2.f <= r.f) r = r2;
            return Cand{r.f, decode(r.x), evals};
        });
        Cand c = reduce(std::move(cands));
        evaluations += c.evals;
        if (c.value < best.value) best = c;
    }

    double t = 0.0;
    score(best.shape, &t);
    std::vector<CVec> q = shape_coefficients(best.shape, xi);
    std::vector<CVec> coeffs(q.size());
    for (size_t m = 0; m < q.size(); ++m) coeffs[m] = t * q[m];
    coeffs[0] += x;
    return {len * std::exp(best.value), AnalyticDisc{coeffs, best.shape.gamma}, evaluations};
}

Json Theorem2Report::to_json() const {
    Json rows = Json::array();
    for (const MetricComparison& m : samples) {
        rows.push_back({{"base", gt::to_json(m.sample.base)},
                        {"direction", gt::to_json(m.sample.direction)},
                        {"azukawa", m.azukawa},
                        {"kobayashi_royden", m.kobayashi_royden},
                        {"discrepancy", m.discrepancy},
                        {"green_source", to_string(m.source)}});
    }
    return {{"check", "theorem2"},
            {"samples", rows},
            {"max_discrepancy", max_discrepancy},
            {"tolerance", tolerance},
            {"pass", pass}};
}

Theorem2Report theorem2_check(const ModelDomain& D, const std::vector<TangentVector>& samples,
                              const LimitConfig& limit_cfg, const SearchConfig& search_cfg, double tolerance) {
    if (samples.empty()) throw std::invalid_argument("theorem2_check needs at least one sample");
    Theorem2Report rep{{}, 0.0, tolerance, true};
    for (const TangentVector& v : samples) {
        const AzukawaResult a = azukawa(D, v, limit_cfg, search_cfg);
        const KobayashiResult k = kobayashi_royden(D, v, search_cfg);
        const double diff = std::abs(a.value - k.value);
        rep.samples.push_back({v, a.value, k.value, diff, a.source});
        rep.max_discrepancy = std::max(rep.max_discrepancy, diff);
    }
    rep.pass = rep.max_discrepancy <= tolerance;
    return rep;
}

} // namespace gt

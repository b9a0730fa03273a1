#include "green_teich/disc_functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "green_teich/errors.hpp"
#include "green_teich/optimize.hpp"
#include "green_teich/polynomial.hpp"

namespace gt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryRootTol = 1e-9;
constexpr double kResidualTol = 1e-9;
constexpr double kMergeTol = 1e-7;
// shrink applied to the computed touching scale so the disc stays admissible after rounding
constexpr double kScaleSafety = 1.0 - 1e-12;

double coefficient_scale(const AnalyticDisc& f) {
    double s = 0.0;
    for (const CVec& c : f.coefficients) s = std::max(s, c.cwiseAbs().maxCoeff());
    return s;
}

// Taylor coefficients of p around s (p(s + h) = sum t_m h^m), by repeated synthetic division.
std::vector<cplx> taylor_at(std::vector<cplx> p, cplx s) {
    std::vector<cplx> out;
    while (!p.empty()) {
        // p(z) = (z - s) q(z) + p(s)
        std::vector<cplx> q(p.size() - 1);
        cplx acc = 0.0;
        for (size_t m = p.size(); m-- > 0;) {
            acc = acc * s + p[m];
            if (m > 0) q[m - 1] = acc;
        }
        out.push_back(acc);
        p = std::move(q);
    }
    return out;
}

std::vector<cplx> component(const AnalyticDisc& f, int j) {
    std::vector<cplx> c(f.coefficients.size());
    for (size_t m = 0; m < c.size(); ++m) c[m] = f.coefficients[m](j);
    return c;
}

// Coefficients (in s) of x + (y - x)(s - b)/(sigma - b) + (s - b)(s - sigma) R(s).
std::vector<CVec> through_points_coefficients(const CVec& x, const CVec& y, cplx b, cplx sigma,
                                              const std::vector<CVec>& R) {
    const int n = static_cast<int>(x.size());
    std::vector<CVec> c(R.size() + 2, CVec::Zero(n));
    const CVec slope = (y - x) / (sigma - b);
    c[0] = x - slope * b;
    c[1] = slope;
    // (s - b)(s - sigma) = s^2 - (b + sigma) s + b sigma
    const cplx q0 = b * sigma, q1 = -(b + sigma);
    for (size_t m = 0; m < R.size(); ++m) {
        c[m] += q0 * R[m];
        c[m + 1] += q1 * R[m];
        c[m + 2] += R[m];
    }
    return c;
}

struct StageParams {
    cplx b;
    cplx sigma;
    std::vector<CVec> R;
};

struct Candidate {
    double value;
    StageParams params;
    AnalyticDisc disc;
    long evals;
};

bool lex_less(const AnalyticDisc& a, const AnalyticDisc& b) {
    auto key = [](const AnalyticDisc& d) {
        std::vector<double> k{d.mobius.real(), d.mobius.imag()};
        for (const CVec& c : d.coefficients)
            for (Eigen::Index j = 0; j < c.size(); ++j) {
                k.push_back(c(j).real());
                k.push_back(c(j).imag());
            }
        return k;
    };
    return key(a) < key(b);
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return lex_less(a.disc, b.disc);
}

} // namespace

CVec AnalyticDisc::polynomial_at(cplx s) const {
    // scalar Horner per component; vector temporaries dominate the cost otherwise
    const int n = dimension();
    CVec acc(n);
    for (int j = 0; j < n; ++j) {
        cplx a = 0.0;
        for (size_t m = coefficients.size(); m-- > 0;) a = a * s + coefficients[m](j);
        acc(j) = a;
    }
    return acc;
}

cplx AnalyticDisc::s_of(cplx zeta) const { return (zeta + mobius) / (1.0 + std::conj(mobius) * zeta); }

cplx AnalyticDisc::zeta_of(cplx s) const { return (s - mobius) / (1.0 - std::conj(mobius) * s); }

CVec AnalyticDisc::operator()(cplx zeta) const { return polynomial_at(s_of(zeta)); }

CVec AnalyticDisc::derivative_at_origin() const {
    CVec dp = CVec::Zero(dimension());
    for (size_t m = coefficients.size(); m-- > 1;) dp = dp * mobius + static_cast<double>(m) * coefficients[m];
    return dp * (1.0 - std::norm(mobius));
}

std::vector<cplx> unit_circle_samples(int n) {
    std::vector<cplx> s(n);
    for (int k = 0; k < n; ++k) s[k] = std::polar(1.0, 2.0 * M_PI * k / n);
    return s;
}

cplx to_unit_disc(double p0, double p1) {
    const cplx p(p0, p1);
    return p / std::sqrt(1.0 + std::norm(p));
}

std::pair<double, double> from_unit_disc(cplx z) {
    const cplx p = z / std::sqrt(1.0 - std::norm(z));
    return {p.real(), p.imag()};
}

double admissible_scale(const ModelDomain& D, const CVec& x, const std::vector<CVec>& boundary_values, double margin) {
    const CVec w = x - D.center();
    double t = kInf;
    for (const CVec& v : boundary_values) t = std::min(t, D.max_step_offset(w, v, margin));
    return t;
}

bool containment_check(const AnalyticDisc& f, const ModelDomain& D, int n_boundary_samples, double margin) {
    if (n_boundary_samples < 64) throw std::invalid_argument("containment_check needs at least 64 boundary samples");
    if (f.dimension() != D.dimension()) return false;
    thread_local std::vector<cplx> circle;
    if (static_cast<int>(circle.size()) != n_boundary_samples) circle = unit_circle_samples(n_boundary_samples);
    for (const cplx& s : circle) {
        const double nrm = D.defining_norm(f.polynomial_at(s));
        if (!(nrm <= 1.0 - margin)) return false;
    }
    return true;
}

PreimageSet find_preimages(const AnalyticDisc& f, const CVec& y) {
    const int n = f.dimension();
    if (n != y.size()) throw std::invalid_argument("find_preimages: dimension mismatch");
    const double scale = std::max(1.0, coefficient_scale(f));

    // the component with the largest nonconstant part gives the best-conditioned roots
    int pivot = -1;
    double pivot_size = 0.0;
    for (int j = 0; j < n; ++j) {
        double size = 0.0;
        for (size_t m = 1; m < f.coefficients.size(); ++m) size = std::max(size, std::abs(f.coefficients[m](j)));
        if (size > pivot_size) {
            pivot_size = size;
            pivot = j;
        }
    }
    if (pivot < 0 || pivot_size <= 1e-14 * scale) {
        if ((f.coefficients.front() - y).cwiseAbs().maxCoeff() <= kResidualTol * scale) {
            throw DegenerateDiscError("constant disc equal to the pole has infinitely many preimages");
        }
        return {};
    }

    std::vector<cplx> p = component(f, pivot);
    p[0] -= y(pivot);
    PreimageSet out;
    for (const Root& r : poly_roots(p, kMergeTol)) {
        const cplx zeta = f.zeta_of(r.value);
        if (!(std::abs(zeta) < 1.0 - kBoundaryRootTol)) continue;
        if ((f.polynomial_at(r.value) - y).cwiseAbs().maxCoeff() > kResidualTol * scale) continue;

        // the vector vanishing order is the smallest order over the components
        int mult = r.multiplicity;
        for (int j = 0; j < n && mult > 1; ++j) {
            if (j == pivot) continue;
            std::vector<cplx> q = component(f, j);
            q[0] -= y(j);
            const std::vector<cplx> t = taylor_at(q, r.value);
            for (int m = 1; m < mult && m < static_cast<int>(t.size()); ++m) {
                if (std::abs(t[m]) > 1e-6 * scale) {
                    mult = m;
                    break;
                }
            }
        }
        out.roots.push_back({zeta, mult});
    }
    return out;
}

UpsilonValue evaluate_upsilon(const AnalyticDisc& f, const CVec& x, const CVec& y) {
    const double scale = std::max(1.0, coefficient_scale(f));
    if ((f(0.0) - x).cwiseAbs().maxCoeff() > kResidualTol * scale) {
        throw std::invalid_argument("evaluate_upsilon: the disc does not start at x");
    }
    PreimageSet pre = find_preimages(f, y);
    if (pre.roots.empty()) return {ExtendedReal(0.0), false, std::move(pre)};
    double sum = 0.0;
    for (const Preimage& r : pre.roots) {
        if (std::abs(r.zeta) <= kCoincidenceTol) return {ExtendedReal::neg_inf(), true, std::move(pre)};
        sum += r.multiplicity * std::log(std::abs(r.zeta));
    }
    return {ExtendedReal(sum), true, std::move(pre)};
}

DiscSearchResult minimize_disc_functional(const ModelDomain& D, const CVec& x, const CVec& y,
                                          const SearchConfig& cfg) {
    D.require_inside(x, "x");
    D.require_inside(y, "y");
    if ((x - y).norm() <= kCoincidenceTol) throw std::invalid_argument("minimize_disc_functional requires x != y");
    if (cfg.max_degree < 1) throw std::invalid_argument("max_degree must be at least 1");

    const int n = D.dimension();
    const std::vector<cplx> circle = unit_circle_samples(cfg.n_boundary_samples);
    const CVec delta = y - x;
    const double dist = delta.norm();
    const CVec u = delta / dist;

    NelderMeadOptions nm;
    nm.f_tol = 1e-15;
    nm.x_tol = 1e-13;

    // Stage 1: P(s) = x + t u e^{i alpha} (s - b) with t the touching scale.
    auto affine_stage = [&](const std::vector<double>& p, StageParams* out) {
        const cplx b = to_unit_disc(p[0], p[1]);
        const cplx rot = std::polar(1.0, p[2]);
        thread_local std::vector<CVec> vals;
        vals.resize(circle.size());
        for (size_t k = 0; k < circle.size(); ++k) {
            vals[k].resize(n);
            vals[k].noalias() = u * (rot * (circle[k] - b));
        }
        const double t = admissible_scale(D, x, vals, cfg.margin) * kScaleSafety;
        if (!std::isfinite(t) || t <= 0.0) return kInf;
        const cplx sigma = b + dist / (rot * t);
        if (out) *out = StageParams{b, sigma, {}};
        // y is not reached inside the unit disc: a positive penalty that shrinks
        // as sigma approaches the circle, so the search can walk to feasibility
        if (!(std::abs(sigma) < 1.0 - kBoundaryRootTol)) return std::abs(sigma);
        return std::log(std::abs((sigma - b) / (1.0 - std::conj(b) * sigma)));
    };

    auto make_disc = [&](const StageParams& sp) {
        return AnalyticDisc{through_points_coefficients(x, y, sp.b, sp.sigma, sp.R), sp.b};
    };

    auto reduce = [](std::vector<Candidate> cands) {
        Candidate best = cands.front();
        long evals = 0;
        for (const Candidate& c : cands) {
            evals += c.evals;
            if (better(c, best)) best = c;
        }
        best.evals = evals;
        return best;
    };

    DiscSearchResult result;
    auto stage1 = run_indexed<Candidate>(cfg.n_starts, cfg.threads, [&](int i) {
        StreamRng rng(cfg.seed, static_cast<std::uint64_t>(i) + 1);
        std::vector<double> p0{0.0, 0.0, 0.0};
        if (i > 0) {
            const cplx b = std::polar(0.85 * std::sqrt(rng.uniform()), 2.0 * M_PI * rng.uniform());
            auto [a0, a1] = from_unit_disc(b);
            p0 = {a0, a1, 2.0 * M_PI * rng.uniform()};
        }
        auto f = [&](const std::vector<double>& p) { return affine_stage(p, nullptr); };
        NelderMeadResult r = nelder_mead(f, p0, {0.3, 0.3, 0.5}, {cfg.max_evals, nm.f_tol, nm.x_tol});
        NelderMeadResult r2 = nelder_mead(f, r.x, {0.01, 0.01, 0.01}, {cfg.max_evals / 2, nm.f_tol, nm.x_tol});
        if (r2.f <= r.f) r2.evals += r.evals, r = r2;
        else r.evals += r2.evals;
        StageParams sp;
        affine_stage(r.x, &sp);
        return Candidate{r.f, sp, make_disc(sp), r.evals};
    });
    Candidate best = reduce(std::move(stage1));
    if (!(best.value < 0.0)) {
        throw NoAdmissibleDiscError("no affine disc through x reaches y inside the domain");
    }
    result.evaluations += best.evals;
    result.stage_estimates.push_back(best.value);

    for (int degree = 2; degree <= cfg.max_degree; ++degree) {
        const int n_r = degree - 1;  // R has degree - 2 + 1 coefficients
        const StageParams start = best.params;
        auto decode = [&](const std::vector<double>& p) {
            StageParams sp;
            sp.b = to_unit_disc(p[0], p[1]);
            sp.sigma = to_unit_disc(p[2], p[3]);
            sp.R.assign(n_r, CVec::Zero(n));
            size_t k = 4;
            for (int m = 0; m < n_r; ++m)
                for (int j = 0; j < n; ++j, k += 2) sp.R[m](j) = {p[k], p[k + 1]};
            return sp;
        };
        auto encode = [&](const StageParams& sp) {
            auto [b0, b1] = from_unit_disc(sp.b);
            auto [s0, s1] = from_unit_disc(sp.sigma);
            std::vector<double> p{b0, b1, s0, s1};
            for (int m = 0; m < n_r; ++m)
                for (int j = 0; j < n; ++j) {
                    const cplx c = m < static_cast<int>(sp.R.size()) ? sp.R[m](j) : cplx(0.0);
                    p.push_back(c.real());
                    p.push_back(c.imag());
                }
            return p;
        };
        auto objective = [&](const std::vector<double>& p) {
            const StageParams sp = decode(p);
            if (std::abs(sp.sigma - sp.b) < 1e-9) return kInf;
            const AnalyticDisc f = make_disc(sp);
            if (!containment_check(f, D, cfg.n_boundary_samples, cfg.margin)) return kInf;
            try {
                const UpsilonValue v = evaluate_upsilon(f, x, y);
                return v.value.value();
            } catch (const DegenerateDiscError&) {
                return kInf;
            }
        };

        auto stage = run_indexed<Candidate>(std::max(1, cfg.refine_starts), cfg.threads, [&](int i) {
            StreamRng rng(cfg.seed, 1000003ULL * static_cast<std::uint64_t>(degree) + static_cast<std::uint64_t>(i));
            StageParams sp = start;
            if (i > 0) {
                // step away from the boundary so the perturbed start is admissible
                const cplx pushed = sp.b + (sp.sigma - sp.b) * 1.02;
                if (std::abs(pushed) < 1.0 - 1e-6) sp.sigma = pushed;
                sp.R.resize(n_r, CVec::Zero(n));
                for (auto& c : sp.R)
                    for (int j = 0; j < n; ++j) c(j) += 1e-3 * cplx(rng.normal(), rng.normal());
            }
            std::vector<double> p0 = encode(sp);
            std::vector<double> step(p0.size(), 0.02);
            NelderMeadResult r = nelder_mead(objective, p0, step, {cfg.refine_evals, nm.f_tol, nm.x_tol});
            const StageParams got = decode(r.x);
            return Candidate{r.f, got, make_disc(got), r.evals};
        });
        Candidate cand = reduce(std::move(stage));
        result.evaluations += cand.evals;
        if (better(cand, best)) best = cand;
        result.stage_estimates.push_back(best.value);
    }

    result.estimate = ExtendedReal(best.value);
    result.witness = best.disc;
    return result;
}

} // namespace gt

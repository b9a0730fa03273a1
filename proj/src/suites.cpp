#include "green_teich/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "green_teich/disc_functional.hpp"
#include "green_teich/errors.hpp"
#include "green_teich/extremality.hpp"
#include "green_teich/hyperbolic.hpp"
#include "green_teich/invariant_metrics.hpp"
#include "green_teich/optimize.hpp"
#include "green_teich/psh_verify.hpp"
#include "green_teich/teich_torus.hpp"

namespace gt {

namespace {

// Stream offsets keep the random draws of different suites independent.
constexpr std::uint64_t kLemma1Stream = 1'000'000;
constexpr std::uint64_t kPoletskiiStream = 2'000'000;
constexpr std::uint64_t kLemma2Stream = 3'000'000;
constexpr std::uint64_t kTheorem2Stream = 4'000'000;
constexpr std::uint64_t kTheorem3Stream = 5'000'000;
constexpr std::uint64_t kCorollary5Stream = 6'000'000;
constexpr std::uint64_t kPshStream = 7'000'000;

Json make_check(const std::string& name, int samples, bool pass, Json worst, Json details) {
    return {{"check", name},
            {"samples", samples},
            {"worst_case", std::move(worst)},
            {"details", std::move(details)},
            {"pass", pass}};
}

void add(SuiteResult& out, Json check) {
    out.pass = out.pass && check["pass"].get<bool>();
    out.worst_case[check["check"].get<std::string>()] = check["worst_case"];
    out.checks.push_back(std::move(check));
}

/// A negative control passes when the wrapped check fails.
Json as_negative_control(Json check) {
    const bool inner = check["pass"].get<bool>();
    check["details"]["inner_pass"] = inner;
    check["details"]["expected"] = "FAIL";
    check["check"] = "negative_control:" + check["check"].get<std::string>();
    check["pass"] = !inner;
    return check;
}

CVec scalar(cplx z) {
    CVec v(1);
    v(0) = z;
    return v;
}

CVec random_direction(int n, StreamRng& rng) {
    CVec v(n);
    for (int j = 0; j < n; ++j) v(j) = cplx(rng.normal(), rng.normal());
    return v / v.norm();
}

// ---------------------------------------------------------------- eq2

void eq2_suite(SuiteResult& out, int n, const RunConfig& cfg) {
    const Eq2Report rep = eq2_identity_check(n, cfg.seed, cfg.tol("eq2_transform"), cfg.tol("eq2_half_plane"));
    Json details = rep.to_json();
    Json worst = details["worst_case"];
    worst["transform_discrepancy"] = details["max_transform_discrepancy"];
    worst["half_plane_discrepancy"] = details["max_half_plane_discrepancy"];
    details.erase("worst_case");
    details.erase("pass");
    details.erase("check");
    details.erase("samples");
    details["transform_tol"] = cfg.tol("eq2_transform");
    details["half_plane_tol"] = cfg.tol("eq2_half_plane");
    add(out, make_check("eq2_identity", n, rep.pass, worst, details));
}

// ---------------------------------------------------------------- lemma1

void lemma1_ball(SuiteResult& out, int n, const RunConfig& cfg) {
    const ModelDomain B = ModelDomain::euclidean_ball(2);
    SearchConfig sc = cfg.search;
    sc.seed = cfg.seed;
    sc.threads = 1;
    const double tol = cfg.tol("lemma1");
    const double sound = cfg.tol("lemma1_soundness");
    struct Row {
        CVec x, y;
        double estimate, oracle;
    };
    const auto rows = run_indexed<Row>(n, cfg.threads, [&](int i) {
        const CVec x = random_ball_point(2, 0.9, cfg.seed, kLemma1Stream + 2 * i);
        const CVec y = random_ball_point(2, 0.9, cfg.seed, kLemma1Stream + 2 * i + 1);
        const DiscSearchResult r = minimize_disc_functional(B, x, y, sc);
        return Row{x, y, r.estimate.value(), green_ball(x, y).value()};
    });
    int within = 0;
    bool sound_ok = true;
    double worst_err = -1.0;
    Json worst, pairs = Json::array();
    for (const Row& r : rows) {
        const double err = r.estimate - r.oracle;
        if (std::abs(err) <= tol) ++within;
        if (err < -sound) sound_ok = false;
        pairs.push_back({{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"estimate", r.estimate}, {"oracle", r.oracle}});
        if (std::abs(err) > worst_err) {
            worst_err = std::abs(err);
            worst = {{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"estimate", r.estimate}, {"oracle", r.oracle},
                     {"error", err}};
        }
    }
    const int required = static_cast<int>(std::ceil(0.95 * n));
    Json details = {{"domain", B.to_descriptor()},
                    {"tol", tol},
                    {"within_tol", within},
                    {"required", required},
                    {"upper_bound_respected", sound_ok},
                    {"soundness_tol", sound},
                    {"max_degree", sc.max_degree},
                    {"n_starts", sc.n_starts},
                    {"pairs", pairs}};
    add(out, make_check("lemma1_ball", n, within >= required && sound_ok, worst, details));
}

/// Largest distance on |zeta| = 0.9 between the witness and the Mobius
/// geodesic through x and y, rotated so that both send the witness preimage
/// of y to y.
double geodesic_deviation(const AnalyticDisc& f, cplx x, cplx y) {
    const PreimageSet pre = find_preimages(f, scalar(y));
    if (pre.roots.empty()) return INFINITY;
    cplx sigma = pre.roots.front().zeta;
    for (const Preimage& p : pre.roots)
        if (std::abs(p.zeta) < std::abs(sigma)) sigma = p.zeta;
    const cplx phi_y = (y - x) / (1.0 - std::conj(x) * y);
    double dev = 0.0;
    for (const cplx zeta : unit_circle_samples(64)) {
        const cplx z = 0.9 * zeta;
        const cplx w = z * phi_y / sigma;
        const cplx g = (w + x) / (1.0 + std::conj(x) * w);
        dev = std::max(dev, std::abs(f(z)(0) - g));
    }
    return dev;
}

void poletskii_disc(SuiteResult& out, int n, const RunConfig& cfg) {
    const ModelDomain D = ModelDomain::disc();
    SearchConfig sc = cfg.search;
    sc.seed = cfg.seed;
    sc.threads = 1;
    const double tol = cfg.tol("poletskii_disc");
    constexpr double kGeodesicTol = 1e-3;
    struct Row {
        cplx x, y;
        double estimate, oracle, deviation;
    };
    const auto rows = run_indexed<Row>(n, cfg.threads, [&](int i) {
        const cplx x = random_ball_point(1, 0.9, cfg.seed, kPoletskiiStream + 2 * i)(0);
        const cplx y = random_ball_point(1, 0.9, cfg.seed, kPoletskiiStream + 2 * i + 1)(0);
        const DiscSearchResult r = minimize_disc_functional(D, scalar(x), scalar(y), sc);
        return Row{x, y, r.estimate.value(), green_disc(DiscPoint(x), DiscPoint(y)).value(),
                   geodesic_deviation(r.witness, x, y)};
    });
    bool pass = true;
    double worst_err = -1.0, max_dev = 0.0;
    Json worst;
    for (const Row& r : rows) {
        const double err = std::abs(r.estimate - r.oracle);
        pass = pass && err <= tol && r.deviation <= kGeodesicTol;
        max_dev = std::max(max_dev, r.deviation);
        if (err > worst_err) {
            worst_err = err;
            worst = {{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"estimate", r.estimate}, {"oracle", r.oracle},
                     {"error", finite_or_tag(err)}};
        }
    }
    Json details = {{"tol", tol},
                    {"max_error", finite_or_tag(worst_err)},
                    {"max_geodesic_deviation", finite_or_tag(max_dev)},
                    {"geodesic_tol", kGeodesicTol}};
    add(out, make_check("poletskii_disc", n, pass, worst, details));
}

// ---------------------------------------------------------------- lemma2

void lemma2_suite(SuiteResult& out, int n, const RunConfig& cfg) {
    const double tol = cfg.tol("lemma2");
    bool pass = true;
    double worst_disc = -1.0;
    Json worst;
    for (int i = 0; i < n; ++i) {
        const TorusModulus x = random_modulus(cfg.seed, kLemma2Stream + 2 * i);
        const TorusModulus base = random_modulus(cfg.seed, kLemma2Stream + 2 * i + 1);
        const Lemma2Report rep = lemma2_check(x, base, tol);
        pass = pass && rep.pass;
        const double d = std::max(rep.discrepancy, rep.fiber_residual);
        if (d > worst_disc) {
            worst_disc = d;
            worst = rep.to_json();
            worst["x"] = to_json(x.value());
            worst["base"] = to_json(base.value());
        }
    }
    add(out, make_check("lemma2", n, pass, worst, {{"tol", tol}}));
}

// ---------------------------------------------------------------- theorem2

std::vector<TangentVector> random_tangents(int dim, int n, std::uint64_t seed, std::uint64_t stream) {
    std::vector<TangentVector> out;
    for (int i = 0; i < n; ++i) {
        StreamRng rng(seed, stream + i);
        const CVec base = random_ball_point(dim, 0.9, seed, stream + 100'000 + i);
        out.emplace_back(base, random_direction(dim, rng) * rng.uniform(0.5, 2.0));
    }
    return out;
}

void theorem2_domain(SuiteResult& out, const ModelDomain& D, int n, std::uint64_t stream, const RunConfig& cfg) {
    SearchConfig sc = cfg.search;
    sc.seed = cfg.seed;
    const double tol = cfg.tol("theorem2");
    const auto samples = random_tangents(D.dimension(), n, cfg.seed, stream);
    const Theorem2Report rep = theorem2_check(D, samples, cfg.limit, sc, tol);
    Json worst;
    double w = -1.0;
    for (const MetricComparison& m : rep.samples) {
        if (m.discrepancy > w) {
            w = m.discrepancy;
            worst = {{"base", to_json(m.sample.base)},
                     {"direction", to_json(m.sample.direction)},
                     {"azukawa", m.azukawa},
                     {"kobayashi_royden", m.kobayashi_royden},
                     {"discrepancy", m.discrepancy}};
        }
    }
    Json details = rep.to_json();
    details.erase("check");
    details.erase("pass");
    details["domain"] = D.to_descriptor();
    add(out, make_check(std::string("theorem2_") + to_string(D.kind()), n, rep.pass, worst, details));

    if (D.kind() != DomainKind::disc) return;
    // on the disc both metrics have the closed form |xi| / (1 - |x|^2)
    bool pass = true;
    double w2 = -1.0;
    Json worst2;
    for (const MetricComparison& m : rep.samples) {
        const double exact = std::abs(m.sample.direction(0)) / (1.0 - std::norm(m.sample.base(0)));
        const double d = std::max(std::abs(m.azukawa - exact), std::abs(m.kobayashi_royden - exact));
        pass = pass && d <= tol;
        if (d > w2) {
            w2 = d;
            worst2 = {{"base", to_json(m.sample.base)},
                      {"direction", to_json(m.sample.direction)},
                      {"exact", exact},
                      {"azukawa", m.azukawa},
                      {"kobayashi_royden", m.kobayashi_royden}};
        }
    }
    add(out, make_check("theorem2_disc_closed_form", n, pass, worst2, {{"tol", tol}, {"max_discrepancy", w2}}));
}

void theorem2_suite(SuiteResult& out, const SuiteOptions& opts, const RunConfig& cfg) {
    const std::string& d = opts.domain;
    if (!d.empty() && d != "disc" && d != "ball") throw ConfigError("theorem2: --domain must be disc or ball");
    if (d.empty() || d == "disc") theorem2_domain(out, ModelDomain::disc(), opts.n.value_or(50), kTheorem2Stream, cfg);
    if (d.empty() || d == "ball")
        theorem2_domain(out, ModelDomain::euclidean_ball(2), opts.n.value_or(20), kTheorem2Stream + 500'000, cfg);
}

// ---------------------------------------------------------------- theorem3

void theorem3_suite(SuiteResult& out, int n, const RunConfig& cfg) {
    std::vector<double> ladder;
    for (int k = 1; k <= 16; ++k) ladder.push_back(std::ldexp(1.0, -k));
    bool pass = true;
    double w = -1.0;
    Json worst;
    for (int i = 0; i < n; ++i) {
        StreamRng rng(cfg.seed, kTheorem3Stream + i);
        const cplx mu0 = std::polar(rng.uniform(0.05, 0.95), rng.uniform(0.0, 2.0 * M_PI));
        const TorusModulus base = random_modulus(cfg.seed, kTheorem3Stream + 100'000 + i);
        const Theorem3Report rep = theorem3_certificate_check(TorusBeltrami(mu0), base, ladder,
                                                              cfg.tol("theorem3_ratio"), cfg.tol("theorem3_value"));
        pass = pass && rep.pass;
        const double d = std::max(rep.max_ratio_deviation, rep.second_condition_discrepancy);
        if (d > w) {
            w = d;
            worst = {{"mu0", to_json(mu0)},
                     {"base", to_json(base.value())},
                     {"max_ratio_deviation", rep.max_ratio_deviation},
                     {"value_discrepancy", rep.second_condition_discrepancy}};
        }
    }
    add(out, make_check("theorem3_certificate", n, pass, worst,
                        {{"ladder", ladder},
                         {"ratio_tol", cfg.tol("theorem3_ratio")},
                         {"value_tol", cfg.tol("theorem3_value")}}));
}

// ---------------------------------------------------------------- corollary5

void torus_constant_case(SuiteResult& out, int n, const RunConfig& cfg) {
    const double tol = cfg.tol("hk_constant");
    bool pass = true;
    double w = -1.0;
    Json worst;
    for (int i = 0; i < n; ++i) {
        StreamRng rng(cfg.seed, kCorollary5Stream + i);
        const cplx mu = std::polar(rng.uniform(0.0, 0.95), rng.uniform(0.0, 2.0 * M_PI));
        const HkResult hk = hk_functional(BeltramiField::constant(mu), QuadDiffBasis::torus_constants(), cfg.quad);
        const double d = std::abs(hk.value - std::abs(mu));
        pass = pass && d <= tol;
        if (d > w) {
            w = d;
            worst = {{"mu", to_json(mu)}, {"hk_value", hk.value}, {"sup_norm", std::abs(mu)}, {"discrepancy", d}};
        }
    }
    add(out, make_check("corollary5:torus-constant", n, pass, worst, {{"tol", tol}, {"basis", "{1}"}}));
}

void torus_alternating_case(SuiteResult& out, const RunConfig& cfg) {
    const std::vector<double> ks = {0.2, 0.5, 0.8};
    bool pass = true;
    double w = -1.0;
    Json worst, rows = Json::array();
    for (const double k : ks) {
        const BeltramiField mu = torus_alternating_field(k);
        const ExtremalityReport rep = is_extremal(mu, QuadDiffBasis::torus_constants(), cfg.tol("extremal"),
                                                  cfg.tol("gap_bound"), cfg.quad);
        const bool ok = rep.hk_value <= 0.5 * mu.sup_norm() + 1e-12 && rep.verdict == Verdict::not_extremal;
        pass = pass && ok;
        rows.push_back(rep.to_json());
        const double ratio = rep.hk_value / mu.sup_norm();
        if (ratio > w) {
            w = ratio;
            worst = {{"k", k}, {"hk_value", rep.hk_value}, {"sup_norm", mu.sup_norm()}};
        }
    }
    add(out, make_check("corollary5:torus-alternating", static_cast<int>(ks.size()), pass, worst,
                        {{"bound", "hk_value <= 0.5 sup_norm"}, {"reports", rows}}));
}

void disc_case(SuiteResult& out, const std::string& name, const BeltramiField& mu, bool expect_extremal,
               const RunConfig& cfg) {
    const ExtremalityReport rep =
        is_extremal(mu, QuadDiffBasis::disc_monomials(6), cfg.tol("extremal"), cfg.tol("gap_bound"), cfg.quad);
    const bool pass = expect_extremal ? rep.verdict == Verdict::extremal
                                      : rep.verdict == Verdict::not_extremal && rep.provisional;
    Json worst = {{"hk_value", rep.hk_value},
                  {"sup_norm", rep.sup_norm},
                  {"gap", rep.sup_norm - rep.hk_value},
                  {"verdict", to_string(rep.verdict)}};
    Json details = rep.to_json();
    details.erase("check");
    details["expected"] = expect_extremal ? "extremal" : "provisional not_extremal";
    details["field"] = mu.label();
    details["basis_degree"] = 6;
    add(out, make_check("corollary5:" + name, 1, pass, worst, details));
}

void corollary5_suite(SuiteResult& out, const SuiteOptions& opts, const RunConfig& cfg) {
    static const std::vector<std::string> cases = {"torus-constant", "torus-alternating", "disc-teichmuller",
                                                   "disc-angular4"};
    const std::string& c = opts.case_name;
    if (!c.empty() && std::find(cases.begin(), cases.end(), c) == cases.end()) {
        throw ConfigError("corollary5: unknown case '" + c + "'");
    }
    if (c.empty() || c == "torus-constant") torus_constant_case(out, opts.n.value_or(20), cfg);
    if (c.empty() || c == "torus-alternating") torus_alternating_case(out, cfg);
    if (c.empty() || c == "disc-teichmuller") disc_case(out, "disc-teichmuller", disc_teichmuller_field(0.4), true, cfg);
    if (c.empty() || c == "disc-angular4") disc_case(out, "disc-angular4", disc_angular4_field(0.4), false, cfg);
}

// ---------------------------------------------------------------- psh

struct SubmeanSample {
    CVec pole, x, xi;
    double r;
};

void submean_domain(SuiteResult& out, const ModelDomain& D, int n, std::uint64_t stream, const RunConfig& cfg) {
    const double tol = cfg.tol("submean");
    const int dim = D.dimension();
    bool pass = true, negative = true;
    double w = INFINITY;
    Json worst;
    for (int i = 0; i < n; ++i) {
        StreamRng rng(cfg.seed, stream + i);
        const CVec pole = random_ball_point(dim, 0.9, cfg.seed, stream + 100'000 + i);
        const CVec x = random_ball_point(dim, 0.9, cfg.seed, stream + 200'000 + i);
        const CVec xi = random_direction(dim, rng);
        // the norm is a seminorm, so this keeps the closed circle inside
        // and the circle stays at least half the pole distance away from the
        // logarithmic singularity, where 64-point averaging is still exact
        const double room = std::min(0.9 * (1.0 - D.defining_norm(x)) / D.defining_norm(xi),
                                     0.5 * (x - pole).norm() / xi.norm());
        const double r = room * rng.uniform(0.05, 1.0);
        const ScalarField u = green_field(D, pole);
        const SubmeanResult s = submean_check(u, x, xi, r, 64, tol);
        pass = pass && s.pass;
        negative = negative && s.lhs.value() < 0.0;
        // slack rhs - lhs; the smallest is the closest call
        const double slack = s.rhs.value() - s.lhs.value();
        if (slack < w) {
            w = slack;
            worst = {{"pole", to_json(pole)}, {"x", to_json(x)}, {"xi", to_json(xi)}, {"r", r},
                     {"lhs", to_json(s.lhs)}, {"rhs", to_json(s.rhs)}};
        }
    }
    // pole at the center of the circle
    const CVec pole = random_ball_point(dim, 0.5, cfg.seed, stream + 300'000);
    CVec xi = CVec::Zero(dim);
    xi(0) = 1.0;
    const SubmeanResult at_pole = submean_check(green_field(D, pole), pole, xi, 0.1, 64, tol);
    pass = pass && at_pole.pass && at_pole.lhs.is_neg_inf();
    Json details = {{"domain", D.to_descriptor()},
                    {"tol", tol},
                    {"circle_samples", 64},
                    {"negative_at_samples", negative},
                    {"pole_center_case", {{"lhs", to_json(at_pole.lhs)}, {"rhs", to_json(at_pole.rhs)}}}};
    add(out, make_check(std::string("submean:") + to_string(D.kind()), n, pass && negative, worst, details));
}

void submean_torus(SuiteResult& out, int n, const RunConfig& cfg) {
    const double tol = cfg.tol("submean");
    bool pass = true;
    double w = -1.0;
    Json worst;
    const CVec xi = scalar(1.0);
    for (int i = 0; i < n; ++i) {
        StreamRng rng(cfg.seed, kPshStream + 900'000 + i);
        const cplx pole = random_modulus(cfg.seed, kPshStream + 910'000 + i).value();
        const cplx x = random_modulus(cfg.seed, kPshStream + 920'000 + i).value();
        // away from the pole the trapezoid error is below (r / |x - pole|)^64
        const double r = std::min(0.9 * x.imag(), 0.5 * std::abs(x - pole)) * rng.uniform(0.05, 1.0);
        const SubmeanResult s = submean_check(torus_green_field(pole), scalar(x), xi, r, 64, tol);
        const double gap = std::abs(s.rhs.value() - s.lhs.value());
        pass = pass && s.pass && gap <= tol && s.lhs.value() < 0.0;
        if (gap > w) {
            w = gap;
            worst = {{"pole", to_json(pole)}, {"x", to_json(x)}, {"r", r}, {"lhs", to_json(s.lhs)},
                     {"rhs", to_json(s.rhs)}, {"gap", gap}};
        }
    }
    add(out, make_check("submean:torus", n, pass, worst,
                        {{"tol", tol}, {"equality_required", true}, {"field", "log k(., pole)"}}));
}

void submean_controls(SuiteResult& out) {
    const ScalarField minus_sq{"-|z|^2", 1, [](const CVec& z) { return ExtendedReal(-z.squaredNorm()); },
                               [](const CVec& z) { return z.norm() < 1.0; }};
    const ScalarField plus_sq{"|z|^2", 1, [](const CVec& z) { return ExtendedReal(z.squaredNorm()); },
                              [](const CVec& z) { return z.norm() < 1.0; }};
    const CVec zero = CVec::Zero(1), one = scalar(1.0);
    const SubmeanResult pos = submean_check(plus_sq, zero, one, 0.5);
    add(out, make_check("submean:|z|^2", 1, pos.pass, {{"lhs", to_json(pos.lhs)}, {"rhs", to_json(pos.rhs)}},
                        {{"note", "psh control"}}));
    const SubmeanResult neg = submean_check(minus_sq, zero, one, 0.5);
    add(out, as_negative_control(make_check("submean:-|z|^2", 1, neg.pass,
                                            {{"lhs", to_json(neg.lhs)}, {"rhs", to_json(neg.rhs)}}, Json::object())));
}

void contraction_suite(SuiteResult& out, const RunConfig& cfg) {
    const double tol = cfg.tol("contraction");
    const GreenFunction g_disc = [](const CVec& a, const CVec& b) { return green_disc(DiscPoint(a(0)), DiscPoint(b(0))); };
    const GreenFunction g_ball = [](const CVec& a, const CVec& b) { return green_ball(a, b); };
    const auto in_disc = [](const CVec& z) { return std::abs(z(0)) < 1.0; };
    const auto in_ball = [](const CVec& z) { return z.norm() < 1.0; };

    std::vector<std::pair<CVec, CVec>> disc_pairs, ball_pairs;
    for (int i = 0; i < 50; ++i) {
        disc_pairs.emplace_back(random_ball_point(1, 0.9, cfg.seed, kPshStream + 500'000 + 2 * i),
                                random_ball_point(1, 0.9, cfg.seed, kPshStream + 500'000 + 2 * i + 1));
        ball_pairs.emplace_back(random_ball_point(2, 0.9, cfg.seed, kPshStream + 600'000 + 2 * i),
                                random_ball_point(2, 0.9, cfg.seed, kPshStream + 600'000 + 2 * i + 1));
    }

    const HolomorphicMap embed{"disc->ball z->(z,0)", [](const CVec& z) {
                                   CVec v = CVec::Zero(2);
                                   v(0) = z(0);
                                   return v;
                               }};
    CheckReport down = contraction_check(g_disc, g_ball, embed, in_ball, disc_pairs, tol);
    const CheckReport up =
        contraction_check(g_disc, g_ball, embed, in_ball, disc_pairs, tol, ContractionDirection::non_decreasing);
    // both directions within tol means equality
    down.details["reverse_direction_pass"] = up.pass;
    down.pass = down.pass && up.pass;
    add(out, down.to_json());

    const HolomorphicMap project{"ball->disc (z1,z2)->z1", [](const CVec& z) { return scalar(z(0)); }};
    add(out, contraction_check(g_ball, g_disc, project, in_disc, ball_pairs, tol).to_json());

    const HolomorphicMap square{"disc->disc z->z^2", [](const CVec& z) { return scalar(z(0) * z(0)); }};
    add(out, contraction_check(g_disc, g_disc, square, in_disc, disc_pairs, tol).to_json());
    add(out, as_negative_control(contraction_check(g_disc, g_disc, square, in_disc, disc_pairs, tol,
                                                   ContractionDirection::non_decreasing)
                                     .to_json()));

    const HolomorphicMap constant{"disc->disc z->0.3", [](const CVec&) { return scalar(0.3); }};
    CheckReport c = contraction_check(g_disc, g_disc, constant, in_disc, disc_pairs, tol);
    c.pass = c.pass && c.details["skipped_degenerate_pairs"].get<int>() == static_cast<int>(disc_pairs.size());
    add(out, c.to_json());

    // z |z|^{-1/2} is not holomorphic and pulls points toward the boundary
    const HolomorphicMap stretch{"disc->disc radial stretch", [](const CVec& z) {
                                     const double a = std::abs(z(0));
                                     return scalar(a > 0.0 ? z(0) / std::sqrt(a) : cplx(0.0));
                                 }};
    std::vector<std::pair<CVec, CVec>> to_origin;
    for (const auto& [x, y] : disc_pairs) to_origin.emplace_back(x, CVec::Zero(1));
    add(out, as_negative_control(contraction_check(g_disc, g_disc, stretch, in_disc, to_origin, tol).to_json()));
}

void symmetry_suite(SuiteResult& out, const RunConfig& cfg) {
    const double tol = cfg.tol("symmetry");
    bool pass = true;
    double w = -1.0;
    Json worst;
    constexpr int kTorusPairs = 100;
    for (int i = 0; i < kTorusPairs; ++i) {
        const TorusModulus x = random_modulus(cfg.seed, kPshStream + 700'000 + 2 * i);
        const TorusModulus y = random_modulus(cfg.seed, kPshStream + 700'000 + 2 * i + 1);
        const double d = ext_distance(teich_distance(x, y).g, teich_distance(y, x).g);
        pass = pass && d <= tol;
        if (d > w) {
            w = d;
            worst = {{"tau1", to_json(x.value())}, {"tau2", to_json(y.value())}, {"asymmetry", d}};
        }
    }
    add(out, make_check("symmetry:torus", kTorusPairs, pass, worst, {{"tol", tol}}));

    // estimator: the asymmetry is bounded by twice the optimization gap
    const ModelDomain B = ModelDomain::euclidean_ball(2);
    SearchConfig sc = cfg.search;
    sc.seed = cfg.seed;
    sc.threads = 1;
    const double slack = 2.0 * cfg.tol("lemma1_soundness");
    constexpr int kEstimatorPairs = 4;
    struct Row {
        CVec x, y;
        double xy, yx, oracle;
    };
    const auto rows = run_indexed<Row>(kEstimatorPairs, cfg.threads, [&](int i) {
        const CVec x = random_ball_point(2, 0.9, cfg.seed, kPshStream + 800'000 + 2 * i);
        const CVec y = random_ball_point(2, 0.9, cfg.seed, kPshStream + 800'000 + 2 * i + 1);
        return Row{x, y, minimize_disc_functional(B, x, y, sc).estimate.value(),
                   minimize_disc_functional(B, y, x, sc).estimate.value(), green_ball(x, y).value()};
    });
    bool pass2 = true;
    double w2 = -1.0;
    Json worst2;
    for (const Row& r : rows) {
        const double gap = std::max(r.xy - r.oracle, r.yx - r.oracle);
        const double asym = std::abs(r.xy - r.yx);
        pass2 = pass2 && asym <= 2.0 * gap + slack;
        if (asym > w2) {
            w2 = asym;
            worst2 = {{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"estimate_xy", r.xy}, {"estimate_yx", r.yx},
                      {"oracle", r.oracle}, {"gap", gap}};
        }
    }
    add(out, make_check("symmetry:estimator", kEstimatorPairs, pass2, worst2,
                        {{"bound", "|est(x,y) - est(y,x)| <= 2 gap"}, {"slack", slack}}));
}

void psh_suite(SuiteResult& out, int n, const RunConfig& cfg) {
    submean_domain(out, ModelDomain::disc(), n, kPshStream, cfg);
    submean_domain(out, ModelDomain::euclidean_ball(2), n, kPshStream + 1'000, cfg);
    submean_domain(out, ModelDomain::polydisc(2), n, kPshStream + 2'000, cfg);
    submean_torus(out, n, cfg);
    submean_controls(out);
    contraction_suite(out, cfg);
    symmetry_suite(out, cfg);
}

// ---------------------------------------------------------------- hyperconvex

void hyperconvex_suite(SuiteResult& out, const RunConfig& cfg) {
    const double tail = cfg.tol("hyperconvex_tail");
    const std::vector<double> ladder = geometric_ladder(32);

    const ModelDomain D = ModelDomain::disc();
    const ScalarField gd = green_field(D, CVec::Zero(1));
    CheckReport disc = hyperconvexity_probe(gd, linear_path(CVec::Zero(1), scalar(1.0)), ladder, tail);
    Json radii = Json::array();
    for (const double r : {0.9, 0.99, 0.999}) {
        const double v = gd.evaluate(scalar(r)).value();
        radii.push_back({{"radius", r}, {"value", v}});
        disc.pass = disc.pass && std::abs(v - std::log(r)) <= 1e-12;
    }
    disc.details["radii"] = radii;
    add(out, disc.to_json());

    const ModelDomain B = ModelDomain::euclidean_ball(2);
    CVec pole(2), start(2), end(2);
    pole << cplx(0.2, 0.0), cplx(0.0, 0.1);
    start << cplx(0.1, 0.0), cplx(0.0, 0.0);
    end << cplx(0.6, 0.0), cplx(0.0, 0.8);
    add(out, hyperconvexity_probe(green_field(B, pole), linear_path(start, end), ladder, tail).to_json());

    const ScalarField gt_ = torus_green_field(cplx(0.0, 1.0));
    CheckReport up = hyperconvexity_probe(gt_, half_plane_path_to_infinity(cplx(0.0, 1.0)), ladder, tail);
    up.check += ":to_infinity";
    add(out, up.to_json());
    CheckReport down = hyperconvexity_probe(gt_, half_plane_path_to_real_axis(cplx(1.0, 2.0)), ladder, tail);
    down.check += ":to_real_axis";
    add(out, down.to_json());

    const ScalarField constant{"constant -1", 1, [](const CVec&) { return ExtendedReal(-1.0); },
                               [](const CVec& z) { return z.norm() < 1.0; }};
    add(out, as_negative_control(
                 hyperconvexity_probe(constant, linear_path(CVec::Zero(1), scalar(1.0)), ladder, tail).to_json()));
}

} // namespace

CVec random_ball_point(int n, double r, std::uint64_t seed, std::uint64_t stream) {
    StreamRng rng(seed, stream);
    CVec v(n);
    for (int j = 0; j < n; ++j) v(j) = cplx(rng.normal(), rng.normal());
    const double radius = r * std::pow(rng.uniform(), 1.0 / (2.0 * n));
    return v * (radius / v.norm());
}

SuiteResult run_lemma1_ball(int n, const RunConfig& cfg) {
    SuiteResult out;
    out.suite = "lemma1";
    lemma1_ball(out, n, cfg);
    return out;
}

SuiteResult run_poletskii_disc(int n, const RunConfig& cfg) {
    SuiteResult out;
    out.suite = "lemma1";
    poletskii_disc(out, n, cfg);
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"eq2",        "lemma1", "lemma2",      "theorem2", "theorem3",
                                                   "corollary5", "psh",    "hyperconvex", "all"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts, const RunConfig& cfg) {
    if (opts.n && *opts.n <= 0) throw ConfigError("--n must be positive");
    SuiteResult out;
    out.suite = name;
    if (name == "all") {
        for (const std::string& s : suite_names()) {
            if (s == "all") continue;
            const SuiteResult r = run_suite(s, opts, cfg);
            for (const Json& c : r.checks) out.checks.push_back(c);
            out.pass = out.pass && r.pass;
            for (const auto& [k, v] : r.worst_case.items()) out.worst_case[k] = v;
        }
        return out;
    }
    if (name == "eq2") eq2_suite(out, opts.n.value_or(100), cfg);
    else if (name == "lemma1") {
        lemma1_ball(out, opts.n.value_or(100), cfg);
        poletskii_disc(out, opts.n.value_or(50), cfg);
    } else if (name == "lemma2") lemma2_suite(out, opts.n.value_or(50), cfg);
    else if (name == "theorem2") theorem2_suite(out, opts, cfg);
    else if (name == "theorem3") theorem3_suite(out, opts.n.value_or(20), cfg);
    else if (name == "corollary5") corollary5_suite(out, opts, cfg);
    else if (name == "psh") psh_suite(out, opts.n.value_or(200), cfg);
    else if (name == "hyperconvex") hyperconvex_suite(out, cfg);
    else throw ConfigError("unknown suite '" + name + "'");
    return out;
}

} // namespace gt

#include "green_teich/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "green_teich/errors.hpp"
#include "green_teich/text_io.hpp"

namespace gt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest t >= 0 with |w + t v| <= R for complex vectors in the Euclidean norm.
double euclidean_step(const CVec& w, const CVec& v, double R) {
    const double a = v.squaredNorm();
    if (a == 0.0) return kInf;
    const double b = hermitian_dot(w, v).real();
    const double c = w.squaredNorm() - R * R;
    if (c >= 0.0) return 0.0;
    const double disc = std::sqrt(b * b - a * c);
    // positive root of a t^2 + 2 b t + c; product of roots is c / a
    return b > 0.0 ? -c / (b + disc) : (disc - b) / a;
}

double scalar_step(cplx w, cplx v, double R) {
    const double a = std::norm(v);
    if (a == 0.0) return kInf;
    const double b = (w * std::conj(v)).real();
    const double c = std::norm(w) - R * R;
    if (c >= 0.0) return 0.0;
    const double disc = std::sqrt(b * b - a * c);
    return b > 0.0 ? -c / (b + disc) : (disc - b) / a;
}

double l1_step(const CVec& w, const CVec& v, double R) {
    if (v.cwiseAbs().sum() == 0.0) return kInf;
    auto excess = [&](double t) { return (w + t * v).cwiseAbs().sum() - R; };
    if (excess(0.0) >= 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (excess(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return lo;
}

void require_strictly_inside_unit(double norm, const char* what) {
    if (!(norm < 1.0 - kBoundaryTol)) {
        throw DomainError(std::string(what) + " is not strictly inside the unit ball (norm " +
                          format_double(norm) + ")");
    }
}

} // namespace

const char* to_string(DomainKind k) {
    switch (k) {
    case DomainKind::disc: return "disc";
    case DomainKind::euclidean_ball: return "euclidean_ball";
    case DomainKind::polydisc: return "polydisc";
    case DomainKind::banach_ball: return "banach_ball";
    }
    return "?";
}

const char* to_string(NormKind k) {
    switch (k) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::sup: return "sup";
    case NormKind::l1: return "l1";
    }
    return "?";
}

cplx hermitian_dot(const CVec& a, const CVec& b) {
    // Eigen's dot conjugates the first argument
    return b.dot(a);
}

double vector_norm(const CVec& v, NormKind norm) {
    switch (norm) {
    case NormKind::euclidean: return v.norm();
    case NormKind::sup: return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    case NormKind::l1: return v.cwiseAbs().sum();
    }
    return 0.0;
}

ModelDomain::ModelDomain(DomainKind kind, NormKind norm, CVec center, double radius)
    : kind_(kind), norm_(norm), center_(std::move(center)), radius_(radius) {
    if (center_.size() < 1) throw std::invalid_argument("domain dimension must be positive");
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw std::invalid_argument("domain radius must be positive");
}

ModelDomain ModelDomain::disc() { return {DomainKind::disc, NormKind::euclidean, CVec::Zero(1), 1.0}; }

ModelDomain ModelDomain::euclidean_ball(int n) {
    return {DomainKind::euclidean_ball, NormKind::euclidean, CVec::Zero(n), 1.0};
}

ModelDomain ModelDomain::polydisc(int n) { return {DomainKind::polydisc, NormKind::sup, CVec::Zero(n), 1.0}; }

ModelDomain ModelDomain::banach_ball(NormKind norm, CVec center, double radius) {
    return {DomainKind::banach_ball, norm, std::move(center), radius};
}

double ModelDomain::defining_norm(const CVec& x) const {
    if (x.size() != center_.size()) throw std::invalid_argument("dimension mismatch");
    return vector_norm(x - center_, norm_) / radius_;
}

Membership ModelDomain::classify(const CVec& x) const {
    const double n = defining_norm(x);
    if (!std::isfinite(n)) return Membership::outside;
    if (std::abs(n - 1.0) <= kBoundaryTol) return Membership::boundary;
    return n < 1.0 ? Membership::inside : Membership::outside;
}

double ModelDomain::circumscribing_radius() const {
    const double n = static_cast<double>(dimension());
    // the unit sup-ball sits in the Euclidean ball of radius sqrt(n)
    const double unit = norm_ == NormKind::sup ? std::sqrt(n) : 1.0;
    return center_.norm() + radius_ * unit;
}

void ModelDomain::require_inside(const CVec& x, const char* what) const {
    if (x.size() != center_.size()) {
        throw DomainError(std::string(what) + " has dimension " + std::to_string(x.size()) + ", domain has " +
                          std::to_string(center_.size()));
    }
    switch (classify(x)) {
    case Membership::inside: return;
    case Membership::boundary: throw DomainError(std::string(what) + " lies on the boundary of the domain");
    case Membership::outside: throw DomainError(std::string(what) + " lies outside the domain");
    }
}

double ModelDomain::max_step(const CVec& x, const CVec& v, double margin) const {
    return max_step_offset(x - center_, v, margin);
}

double ModelDomain::max_step_offset(const CVec& w, const CVec& v, double margin) const {
    const double R = radius_ * (1.0 - margin);
    switch (norm_) {
    case NormKind::euclidean: return euclidean_step(w, v, R);
    case NormKind::sup: {
        double t = kInf;
        for (Eigen::Index j = 0; j < w.size(); ++j) t = std::min(t, scalar_step(w(j), v(j), R));
        return t;
    }
    case NormKind::l1: return l1_step(w, v, R);
    }
    return 0.0;
}

std::optional<ExtendedReal> ModelDomain::green_oracle(const CVec& x, const CVec& y) const {
    require_inside(x, "x");
    require_inside(y, "y");
    switch (kind_) {
    case DomainKind::disc: return green_disc(DiscPoint(x(0)), DiscPoint(y(0)));
    case DomainKind::euclidean_ball: return green_ball(x, y);
    case DomainKind::polydisc: return green_polydisc(x, y);
    case DomainKind::banach_ball:
        if ((y - center_).norm() <= kCoincidenceTol) return banach_ball_green(x, center_, radius_, norm_);
        return std::nullopt;
    }
    return std::nullopt;
}

std::string ModelDomain::to_descriptor() const {
    std::ostringstream os;
    os << "kind=" << to_string(kind_) << " dim=" << dimension() << " norm=" << to_string(norm_)
       << " radius=" << format_double(radius_) << " center=" << format_cvec(center_);
    return os.str();
}

ModelDomain ModelDomain::parse(const std::string& text) {
    std::istringstream is(text);
    std::map<std::string, std::string> fields;
    std::string token;
    std::vector<std::string> bare;
    while (is >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            bare.push_back(token);
        } else {
            fields[token.substr(0, eq)] = token.substr(eq + 1);
        }
    }
    if (fields.empty()) {
        if (bare.size() != 1) throw ConfigError("cannot parse domain '" + text + "'");
        const std::string& s = bare.front();
        auto dim_suffix = [&](const std::string& prefix) {
            const std::string digits = s.substr(prefix.size());
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
                throw ConfigError("cannot parse domain '" + text + "'");
            }
            const int n = std::stoi(digits);
            if (n < 1) throw ConfigError("domain dimension must be positive");
            return n;
        };
        if (s == "disc") return disc();
        if (s.rfind("polydisc", 0) == 0) return polydisc(dim_suffix("polydisc"));
        if (s.rfind("ball", 0) == 0) return euclidean_ball(dim_suffix("ball"));
        throw ConfigError("unknown domain '" + text + "'");
    }
    if (!bare.empty()) throw ConfigError("unexpected token '" + bare.front() + "' in domain descriptor");

    auto get = [&](const char* key) -> const std::string& {
        auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError(std::string("domain descriptor lacks '") + key + "'");
        return it->second;
    };
    const std::string& kind = get("kind");
    const int n = std::stoi(get("dim"));
    if (n < 1) throw ConfigError("domain dimension must be positive");
    if (kind == "disc") {
        if (n != 1) throw ConfigError("disc has dimension 1");
        return disc();
    }
    if (kind == "euclidean_ball") return euclidean_ball(n);
    if (kind == "polydisc") return polydisc(n);
    if (kind == "banach_ball") {
        const std::string& norm_text = get("norm");
        NormKind norm;
        if (norm_text == "euclidean") norm = NormKind::euclidean;
        else if (norm_text == "sup") norm = NormKind::sup;
        else if (norm_text == "l1") norm = NormKind::l1;
        else throw ConfigError("unknown norm '" + norm_text + "'");
        const double r = std::stod(get("radius"));
        if (!(r > 0.0)) throw ConfigError("domain radius must be positive");
        CVec center = fields.count("center") ? parse_cvec(fields["center"], n) : CVec::Zero(n);
        return banach_ball(norm, center, r);
    }
    throw ConfigError("unknown domain kind '" + kind + "'");
}

bool operator==(const ModelDomain& a, const ModelDomain& b) {
    return a.kind_ == b.kind_ && a.norm_ == b.norm_ && a.radius_ == b.radius_ && a.center_.size() == b.center_.size() &&
           a.center_ == b.center_;
}

CVec ball_automorphism(const CVec& a, const CVec& z) {
    const double aa = a.squaredNorm();
    const cplx za = hermitian_dot(z, a);
    if (aa == 0.0) return -z;
    const CVec proj = (za / aa) * a;
    const CVec perp = z - proj;
    const double s = std::sqrt(1.0 - aa);
    return (a - proj - s * perp) / (1.0 - za);
}

HyperbolicDistance kobayashi_distance_ball(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    require_strictly_inside_unit(x.norm(), "x");
    require_strictly_inside_unit(y.norm(), "y");
    if ((x - y).norm() <= kCoincidenceTol) return HyperbolicDistance(0.0);
    const double r = std::min(ball_automorphism(y, x).norm(), std::nextafter(1.0, 0.0));
    return HyperbolicDistance(std::atanh(r));
}

ExtendedReal green_ball(const CVec& x, const CVec& y) { return eq2_transform(kobayashi_distance_ball(x, y)); }

ExtendedReal green_polydisc(const CVec& x, const CVec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    ExtendedReal best = ExtendedReal::neg_inf();
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        require_strictly_inside_unit(std::abs(x(j)), "x");
        require_strictly_inside_unit(std::abs(y(j)), "y");
        best = std::max(best, green_disc(DiscPoint(x(j)), DiscPoint(y(j))));
    }
    return best;
}

ExtendedReal banach_ball_green(const CVec& x, const CVec& center, double r, NormKind norm) {
    if (x.size() != center.size()) throw std::invalid_argument("dimension mismatch");
    const double d = vector_norm(x - center, norm);
    if (!(d < r * (1.0 - kBoundaryTol))) throw DomainError("point is not strictly inside the Banach ball");
    if (d <= kCoincidenceTol) return ExtendedReal::neg_inf();
    return ExtendedReal(std::log(d / r));
}

} // namespace gt

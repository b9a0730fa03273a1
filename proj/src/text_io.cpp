#include "green_teich/text_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "green_teich/errors.hpp"

namespace gt {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& text, const std::string& whole) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("cannot parse number in '" + whole + "'");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw ConfigError("cannot parse number in '" + whole + "'");
    return v;
}

// Imaginary part written as "<coef>i" where coef may be empty, "+" or "-".
double parse_imag(const std::string& coef, const std::string& whole) {
    const std::string t = trim(coef);
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, whole);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (;;) {
        const size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_complex(cplx z) {
    std::string s = format_double(z.real());
    const double im = z.imag();
    s += (std::signbit(im) ? "-" : "+");
    s += format_double(std::abs(im));
    s += "i";
    return s;
}

cplx parse_complex(const std::string& input) {
    const std::string text = trim(input);
    if (text.empty()) throw ConfigError("empty complex number");
    if (text.find(',') != std::string::npos) {
        const auto parts = split(text, ',');
        if (parts.size() != 2) throw ConfigError("cannot parse complex number '" + input + "'");
        return {parse_real(parts[0], input), parse_real(parts[1], input)};
    }
    if (text.back() != 'i' && text.back() != 'I') return {parse_real(text, input), 0.0};

    const std::string body = text.substr(0, text.size() - 1);
    // split at the last sign that is not the leading one and not an exponent sign
    size_t split_at = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    if (split_at == std::string::npos) return {0.0, parse_imag(body, input)};
    return {parse_real(body.substr(0, split_at), input), parse_imag(body.substr(split_at), input)};
}

CVec parse_cvec(const std::string& text, int n) {
    const auto fields = split(trim(text), ',');
    CVec v(n);
    if (static_cast<int>(fields.size()) == n) {
        for (int j = 0; j < n; ++j) v(j) = parse_complex(fields[j]);
    } else if (static_cast<int>(fields.size()) == 2 * n) {
        for (int j = 0; j < n; ++j) v(j) = {parse_real(fields[2 * j], text), parse_real(fields[2 * j + 1], text)};
    } else {
        throw ConfigError("expected " + std::to_string(n) + " complex components in '" + text + "'");
    }
    return v;
}

std::string format_cvec(const CVec& v) {
    std::string s;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (j) s += ",";
        s += format_complex(v(j));
    }
    return s;
}

Json to_json(cplx z) { return Json::array({finite_or_tag(z.real()), finite_or_tag(z.imag())}); }

Json to_json(const CVec& v) {
    Json a = Json::array();
    for (Eigen::Index j = 0; j < v.size(); ++j) a.push_back(to_json(v(j)));
    return a;
}

Json to_json(ExtendedReal v) { return finite_or_tag(v.value()); }

Json finite_or_tag(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

} // namespace gt

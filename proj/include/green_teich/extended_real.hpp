#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace gt {

/// Real number extended by -infinity.
///
/// Green functions take the value -inf at their pole; that is a legitimate
/// value and not an error, so it travels through the library as an ordinary
/// value. NaN is never produced by the constructors below.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr explicit ExtendedReal(double v) : value_(v) {}

    static constexpr ExtendedReal neg_inf() {
        return ExtendedReal(-std::numeric_limits<double>::infinity());
    }

    /// log(v) for v >= 0, with log(0) mapped to the -inf sentinel.
    static ExtendedReal log_of(double v) {
        if (v <= 0.0) return neg_inf();
        return ExtendedReal(std::log(v));
    }

    constexpr bool is_neg_inf() const {
        return value_ == -std::numeric_limits<double>::infinity();
    }
    constexpr bool is_finite() const { return !is_neg_inf() && value_ < std::numeric_limits<double>::infinity(); }
    constexpr double value() const { return value_; }

    /// exp of the value; exp(-inf) = 0.
    double exp() const { return is_neg_inf() ? 0.0 : std::exp(value_); }

    friend constexpr auto operator<=>(ExtendedReal a, ExtendedReal b) { return a.value_ <=> b.value_; }
    friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) { return a.value_ == b.value_; }

    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) { return ExtendedReal(a.value_ + b.value_); }

private:
    double value_ = 0.0;
};

/// |a - b| where two -inf values are at distance zero and a finite value is
/// infinitely far from -inf.
inline double ext_distance(ExtendedReal a, ExtendedReal b) {
    if (a.is_neg_inf() && b.is_neg_inf()) return 0.0;
    if (a.is_neg_inf() || b.is_neg_inf()) return std::numeric_limits<double>::infinity();
    return std::abs(a.value() - b.value());
}

} // namespace gt

#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pdiv/text.hpp"

namespace pdiv {

/// A non-negative real extended with +infinity.
///
/// All costs, l-infinity distances and penalty values live here. Finite
/// arithmetic agrees with the reals; infinity absorbs addition, max, and
/// powers with exponent >= 1. Negative values and NaN are rejected at
/// construction, so downstream arithmetic can never produce NaN (the one
/// dangerous combination, inf - inf, has no operator).
class ExtendedValue {
public:
    ExtendedValue() = default;

    ExtendedValue(double v) : v_(v) {
        if (std::isnan(v)) throw std::invalid_argument("ExtendedValue: NaN is not a value");
        if (v < 0.0) throw std::invalid_argument("ExtendedValue: negative value " + format_double(v));
    }

    static ExtendedValue infinity() { return ExtendedValue(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(v_); }
    bool is_finite() const { return !std::isinf(v_); }

    /// Underlying double; +inf for the infinite value.
    double raw() const { return v_; }

    friend ExtendedValue operator+(ExtendedValue a, ExtendedValue b) { return ExtendedValue(a.v_ + b.v_); }
    ExtendedValue& operator+=(ExtendedValue o) {
        v_ += o.v_;
        return *this;
    }

    friend auto operator<=>(ExtendedValue a, ExtendedValue b) { return a.v_ <=> b.v_; }
    friend bool operator==(ExtendedValue a, ExtendedValue b) { return a.v_ == b.v_; }

private:
    double v_ = 0.0;
};

inline ExtendedValue max(ExtendedValue a, ExtendedValue b) { return a < b ? b : a; }

/// x^p for p >= 1. Exact pass-through for p == 1 and a plain product for
/// p == 2 keep the common orders deterministic across call sites.
inline ExtendedValue pow_p(ExtendedValue x, double p) {
    if (p < 1.0) throw std::invalid_argument("pow_p: exponent must be >= 1");
    if (x.is_infinite()) return ExtendedValue::infinity();
    if (p == 1.0) return x;
    if (p == 2.0) return ExtendedValue(x.raw() * x.raw());
    return ExtendedValue(std::pow(x.raw(), p));
}

/// x^(1/p) for p >= 1; infinity^(1/p) stays infinity.
inline ExtendedValue root_p(ExtendedValue x, double p) {
    if (p < 1.0) throw std::invalid_argument("root_p: order must be >= 1");
    if (x.is_infinite()) return ExtendedValue::infinity();
    if (p == 1.0) return x;
    if (p == 2.0) return ExtendedValue(std::sqrt(x.raw()));
    return ExtendedValue(std::pow(x.raw(), 1.0 / p));
}

/// "inf" or the shortest round-trip decimal form.
inline std::string to_string(ExtendedValue v) { return v.is_infinite() ? "inf" : format_double(v.raw()); }

inline std::ostream& operator<<(std::ostream& os, ExtendedValue v) { return os << to_string(v); }

/// The order of a matching objective: a real p >= 1, or infinity for
/// bottleneck (max) objectives.
class Order {
public:
    Order() = default;  // p = 1

    Order(double p) : p_(p) {
        if (std::isnan(p) || p < 1.0) throw std::invalid_argument("Order: p must be >= 1 or infinity");
    }

    static Order infinity() { return Order(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const { return std::isinf(p_); }
    double value() const { return p_; }

    friend bool operator==(Order a, Order b) { return a.p_ == b.p_; }

private:
    double p_ = 1.0;
};

inline std::string to_string(Order p) { return p.is_infinite() ? "inf" : format_double(p.value()); }

}  // namespace pdiv

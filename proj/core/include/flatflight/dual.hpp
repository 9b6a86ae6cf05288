#pragma once

#include <cmath>

namespace flatflight {

// First-order dual number: value plus one tangent component. Used to obtain
// exact partial derivatives of residual maps and dynamics (forward-mode
// differentiation), so Newton Jacobians and linearizations carry no
// finite-difference truncation error.
struct Dual {
    double v = 0.0; // value
    double d = 0.0; // tangent

    Dual() = default;
    Dual(double value) : v(value), d(0.0) {} // NOLINT: implicit from double intended
    Dual(double value, double tangent) : v(value), d(tangent) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) { d = (d * o.v - v * o.d) / (o.v * o.v); v /= o.v; return *this; }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
inline Dual operator+(const Dual& a) { return a; }

inline bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
inline bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
inline bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }

inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual tan(const Dual& a) {
    double t = std::tan(a.v);
    return {t, (1.0 + t * t) * a.d};
}
inline Dual atan(const Dual& a) { return {std::atan(a.v), a.d / (1.0 + a.v * a.v)}; }
inline Dual asin(const Dual& a) { return {std::asin(a.v), a.d / std::sqrt(1.0 - a.v * a.v)}; }
inline Dual exp(const Dual& a) {
    double e = std::exp(a.v);
    return {e, e * a.d};
}
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sqrt(const Dual& a) {
    double s = std::sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
inline Dual pow(const Dual& a, double p) {
    return {std::pow(a.v, p), p * std::pow(a.v, p - 1.0) * a.d};
}
inline Dual atan2(const Dual& y, const Dual& x) {
    double den = x.v * x.v + y.v * y.v;
    return {std::atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / den};
}
inline Dual fabs(const Dual& a) { return a.v < 0.0 ? Dual{-a.v, -a.d} : a; }

// Value extraction shared with plain doubles by the generic model code.
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

} // namespace flatflight

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "flatflight/dual.hpp"
#include "flatflight/errors.hpp"

namespace flatflight {

// Truncated univariate power series in a local time variable, dense
// coefficients c0..c_order. The scalar type is double for ordinary values and
// Dual when a tangent has to be propagated through series arithmetic.
//
// Arithmetic never reports an order higher than the minimum input order
// permits; operations that would need a higher order than stored are errors,
// not silent zero-padding.
template <class S>
class BasicTaylorSeries {
public:
    using scalar_type = S;
    static constexpr int kMaxOrder = 64;

    BasicTaylorSeries() : c_(1, S(0.0)) {}

    explicit BasicTaylorSeries(int order) : c_(check_order(order) + 1, S(0.0)) {}

    BasicTaylorSeries(std::initializer_list<S> coeffs) : c_(coeffs) {
        if (c_.empty()) c_.assign(1, S(0.0));
        check_order(order());
    }

    static BasicTaylorSeries constant(S value, int order) {
        BasicTaylorSeries s(order);
        s.c_[0] = value;
        return s;
    }

    // value + t, the local time variable itself
    static BasicTaylorSeries variable(S value, int order) {
        BasicTaylorSeries s(order);
        s.c_[0] = value;
        if (order >= 1) s.c_[1] = S(1.0);
        return s;
    }

    static BasicTaylorSeries from_coeffs(std::vector<S> coeffs) {
        BasicTaylorSeries s;
        if (coeffs.empty()) coeffs.assign(1, S(0.0));
        check_order(static_cast<int>(coeffs.size()) - 1);
        s.c_ = std::move(coeffs);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const S& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
    S& operator[](int k) { return c_[static_cast<size_t>(k)]; }

    const std::vector<S>& coeffs() const { return c_; }

    // constant term
    const S& value() const { return c_[0]; }

    // Horner evaluation at local offset dt
    S eval(S dt) const {
        S acc = c_.back();
        for (int k = order() - 1; k >= 0; --k) acc = acc * dt + c_[static_cast<size_t>(k)];
        return acc;
    }

    BasicTaylorSeries truncated(int new_order) const {
        if (new_order < 0) throw Error(Error::Kind::insufficient_order, "truncate to negative order");
        if (new_order >= order()) return *this;
        BasicTaylorSeries out(new_order);
        std::copy(c_.begin(), c_.begin() + new_order + 1, out.c_.begin());
        return out;
    }

    // Explicit zero-padding, only for guesses whose higher coefficients are
    // known to be zero by convention. Regular arithmetic never does this.
    BasicTaylorSeries extended(int new_order) const {
        if (new_order <= order()) return truncated(new_order);
        BasicTaylorSeries out(new_order);
        std::copy(c_.begin(), c_.end(), out.c_.begin());
        return out;
    }

    BasicTaylorSeries derivative() const {
        if (order() < 1)
            throw Error(Error::Kind::insufficient_order, "derivative of order-0 series");
        BasicTaylorSeries out(order() - 1);
        for (int k = 1; k <= order(); ++k)
            out.c_[static_cast<size_t>(k - 1)] = S(static_cast<double>(k)) * c_[static_cast<size_t>(k)];
        return out;
    }

    BasicTaylorSeries antiderivative(S c0 = S(0.0)) const {
        BasicTaylorSeries out(order() + 1);
        out.c_[0] = c0;
        for (int k = 0; k <= order(); ++k)
            out.c_[static_cast<size_t>(k + 1)] = c_[static_cast<size_t>(k)] / S(static_cast<double>(k + 1));
        return out;
    }

    BasicTaylorSeries& operator+=(const BasicTaylorSeries& o) { return *this = *this + o; }
    BasicTaylorSeries& operator-=(const BasicTaylorSeries& o) { return *this = *this - o; }
    BasicTaylorSeries& operator*=(const BasicTaylorSeries& o) { return *this = *this * o; }
    BasicTaylorSeries& operator/=(const BasicTaylorSeries& o) { return *this = *this / o; }

    friend BasicTaylorSeries operator+(const BasicTaylorSeries& a, const BasicTaylorSeries& b) {
        int n = std::min(a.order(), b.order());
        BasicTaylorSeries out(n);
        for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
        return out;
    }

    friend BasicTaylorSeries operator-(const BasicTaylorSeries& a, const BasicTaylorSeries& b) {
        int n = std::min(a.order(), b.order());
        BasicTaylorSeries out(n);
        for (int k = 0; k <= n; ++k) out[k] = a[k] - b[k];
        return out;
    }

    friend BasicTaylorSeries operator-(const BasicTaylorSeries& a) {
        BasicTaylorSeries out(a.order());
        for (int k = 0; k <= a.order(); ++k) out[k] = -a[k];
        return out;
    }

    // Cauchy product truncated at the minimum input order.
    friend BasicTaylorSeries operator*(const BasicTaylorSeries& a, const BasicTaylorSeries& b) {
        int n = std::min(a.order(), b.order());
        BasicTaylorSeries out(n);
        for (int k = 0; k <= n; ++k) {
            S acc(0.0);
            for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
            out[k] = acc;
        }
        return out;
    }

    friend BasicTaylorSeries operator/(const BasicTaylorSeries& a, const BasicTaylorSeries& b) {
        if (value_of(b.value()) == 0.0)
            throw Error(Error::Kind::singular_division,
                        "division by series with zero constant term");
        int n = std::min(a.order(), b.order());
        BasicTaylorSeries out(n);
        for (int k = 0; k <= n; ++k) {
            S acc = a[k];
            for (int j = 1; j <= k; ++j) acc -= b[j] * out[k - j];
            out[k] = acc / b[0];
        }
        return out;
    }

    friend BasicTaylorSeries operator+(const BasicTaylorSeries& a, const S& s) {
        BasicTaylorSeries out = a;
        out[0] += s;
        return out;
    }
    friend BasicTaylorSeries operator+(const S& s, const BasicTaylorSeries& a) { return a + s; }
    friend BasicTaylorSeries operator-(const BasicTaylorSeries& a, const S& s) { return a + (-s); }
    friend BasicTaylorSeries operator-(const S& s, const BasicTaylorSeries& a) { return (-a) + s; }

    friend BasicTaylorSeries operator*(const BasicTaylorSeries& a, const S& s) {
        BasicTaylorSeries out(a.order());
        for (int k = 0; k <= a.order(); ++k) out[k] = a[k] * s;
        return out;
    }
    friend BasicTaylorSeries operator*(const S& s, const BasicTaylorSeries& a) { return a * s; }
    friend BasicTaylorSeries operator/(const BasicTaylorSeries& a, const S& s) {
        BasicTaylorSeries out(a.order());
        for (int k = 0; k <= a.order(); ++k) out[k] = a[k] / s;
        return out;
    }
    friend BasicTaylorSeries operator/(const S& s, const BasicTaylorSeries& a) {
        return constant(s, a.order()) / a;
    }

private:
    static int check_order(int order) {
        if (order < 0 || order > kMaxOrder)
            throw Error(Error::Kind::config,
                        "series order out of range [0," + std::to_string(kMaxOrder) + "]: " +
                            std::to_string(order));
        return order;
    }

    std::vector<S> c_;
};

using TaylorSeries = BasicTaylorSeries<double>;
using DualSeries = BasicTaylorSeries<Dual>;

template <class S>
double value_of(const BasicTaylorSeries<S>& s) {
    return value_of(s.value());
}

// ---------------------------------------------------------------------------
// Elementary functions by the classical convolution recurrences. All keep the
// input order; domain violations of the constant term raise Error::domain.
// ---------------------------------------------------------------------------

template <class S>
BasicTaylorSeries<S> exp(const BasicTaylorSeries<S>& a) {
    using std::exp;
    int n = a.order();
    BasicTaylorSeries<S> e(n);
    e[0] = exp(a[0]);
    for (int m = 0; m < n; ++m) {
        S acc(0.0);
        for (int j = 0; j <= m; ++j) acc += S(static_cast<double>(j + 1)) * a[j + 1] * e[m - j];
        e[m + 1] = acc / S(static_cast<double>(m + 1));
    }
    return e;
}

namespace detail {
// sin and cos share the coupled recurrence s' = a'c, c' = -a's.
template <class S>
void sincos(const BasicTaylorSeries<S>& a, BasicTaylorSeries<S>& s, BasicTaylorSeries<S>& c) {
    using std::sin;
    using std::cos;
    int n = a.order();
    s = BasicTaylorSeries<S>(n);
    c = BasicTaylorSeries<S>(n);
    s[0] = sin(a[0]);
    c[0] = cos(a[0]);
    for (int m = 0; m < n; ++m) {
        S accs(0.0), accc(0.0);
        for (int j = 0; j <= m; ++j) {
            S da = S(static_cast<double>(j + 1)) * a[j + 1];
            accs += da * c[m - j];
            accc += da * s[m - j];
        }
        s[m + 1] = accs / S(static_cast<double>(m + 1));
        c[m + 1] = -accc / S(static_cast<double>(m + 1));
    }
}
} // namespace detail

template <class S>
BasicTaylorSeries<S> sin(const BasicTaylorSeries<S>& a) {
    BasicTaylorSeries<S> s, c;
    detail::sincos(a, s, c);
    return s;
}

template <class S>
BasicTaylorSeries<S> cos(const BasicTaylorSeries<S>& a) {
    BasicTaylorSeries<S> s, c;
    detail::sincos(a, s, c);
    return c;
}

template <class S>
BasicTaylorSeries<S> tan(const BasicTaylorSeries<S>& a) {
    BasicTaylorSeries<S> s, c;
    detail::sincos(a, s, c);
    if (std::abs(value_of(c.value())) < 1e-14)
        throw Error(Error::Kind::domain, "tan: cos of constant term is zero");
    return s / c;
}

template <class S>
BasicTaylorSeries<S> sqrt(const BasicTaylorSeries<S>& a) {
    using std::sqrt;
    if (!(value_of(a.value()) > 0.0))
        throw Error(Error::Kind::domain, "sqrt: constant term must be positive");
    int n = a.order();
    BasicTaylorSeries<S> b(n);
    b[0] = sqrt(a[0]);
    S twob0 = S(2.0) * b[0];
    for (int k = 1; k <= n; ++k) {
        S acc = a[k];
        for (int j = 1; j <= k - 1; ++j) acc -= b[j] * b[k - j];
        b[k] = acc / twob0;
    }
    return b;
}

template <class S>
BasicTaylorSeries<S> atan(const BasicTaylorSeries<S>& a) {
    using std::atan;
    int n = a.order();
    BasicTaylorSeries<S> u = S(1.0) + a * a; // 1 + a^2
    BasicTaylorSeries<S> b(n);
    b[0] = atan(a[0]);
    for (int m = 0; m < n; ++m) {
        S acc = S(static_cast<double>(m + 1)) * a[m + 1];
        for (int j = 1; j <= m; ++j) acc -= S(static_cast<double>(m + 1 - j)) * b[m + 1 - j] * u[j];
        b[m + 1] = acc / (S(static_cast<double>(m + 1)) * u[0]);
    }
    return b;
}

template <class S>
BasicTaylorSeries<S> log(const BasicTaylorSeries<S>& a) {
    using std::log;
    if (!(value_of(a.value()) > 0.0))
        throw Error(Error::Kind::domain, "log: constant term must be positive");
    int n = a.order();
    BasicTaylorSeries<S> b(n);
    b[0] = log(a[0]);
    for (int m = 0; m < n; ++m) {
        S acc = S(static_cast<double>(m + 1)) * a[m + 1];
        for (int j = 1; j <= m; ++j) acc -= S(static_cast<double>(m + 1 - j)) * b[m + 1 - j] * a[j];
        b[m + 1] = acc / (S(static_cast<double>(m + 1)) * a[0]);
    }
    return b;
}

// Integer power by repeated multiplication; valid for any constant term.
template <class S>
BasicTaylorSeries<S> pow(const BasicTaylorSeries<S>& a, int p) {
    if (p < 0) return S(1.0) / pow(a, -p);
    BasicTaylorSeries<S> out = BasicTaylorSeries<S>::constant(S(1.0), a.order());
    BasicTaylorSeries<S> base = a;
    int e = p;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

// Real power; requires positive constant term.
template <class S>
BasicTaylorSeries<S> pow(const BasicTaylorSeries<S>& a, double p) {
    using std::pow;
    if (!(value_of(a.value()) > 0.0))
        throw Error(Error::Kind::domain, "pow: constant term must be positive");
    int n = a.order();
    BasicTaylorSeries<S> b(n);
    b[0] = pow(a[0], p);
    for (int m = 0; m < n; ++m) {
        S acc(0.0);
        for (int j = 0; j <= m; ++j) acc += S(static_cast<double>(j + 1)) * a[j + 1] * b[m - j];
        acc = acc * S(p);
        for (int j = 1; j <= m; ++j) acc -= a[j] * S(static_cast<double>(m + 1 - j)) * b[m + 1 - j];
        b[m + 1] = acc / (S(static_cast<double>(m + 1)) * a[0]);
    }
    return b;
}

template <class S>
BasicTaylorSeries<S> asin(const BasicTaylorSeries<S>& a) {
    double a0 = value_of(a.value());
    if (!(a0 > -1.0 && a0 < 1.0))
        throw Error(Error::Kind::domain, "asin: constant term outside (-1, 1)");
    return atan(a / sqrt(S(1.0) - a * a));
}

// Quadrant-correct atan2 on series: branch from the constant terms, higher
// coefficients from integrating (x y' - y x')/(x^2 + y^2).
template <class S>
BasicTaylorSeries<S> atan2(const BasicTaylorSeries<S>& y, const BasicTaylorSeries<S>& x) {
    using std::atan2;
    int n = std::min(x.order(), y.order());
    S c0 = atan2(y[0], x[0]);
    if (n == 0) return BasicTaylorSeries<S>::constant(c0, 0);
    BasicTaylorSeries<S> den = x * x + y * y;
    if (value_of(den.value()) == 0.0)
        throw Error(Error::Kind::domain, "atan2: both arguments vanish at base point");
    BasicTaylorSeries<S> num =
        x.truncated(n - 1) * y.derivative() - y.truncated(n - 1) * x.derivative();
    return (num / den.truncated(n - 1)).antiderivative(c0);
}

// Re-types a double series into another scalar field (tangent parts zero).
template <class S>
BasicTaylorSeries<S> lift_series(const TaylorSeries& a) {
    BasicTaylorSeries<S> out(a.order());
    for (int k = 0; k <= a.order(); ++k) out[k] = S(a[k]);
    return out;
}

template <>
inline BasicTaylorSeries<double> lift_series<double>(const TaylorSeries& a) {
    return a;
}

// ---------------------------------------------------------------------------
// Named collection of series sharing one base time. Per-entry orders may
// differ (staged planning orders).
// ---------------------------------------------------------------------------
struct SeriesVector {
    double base_time = 0.0;
    std::map<std::string, TaylorSeries> entries;

    bool contains(const std::string& name) const { return entries.count(name) != 0; }

    const TaylorSeries& at(const std::string& name) const {
        auto it = entries.find(name);
        if (it == entries.end())
            throw Error(Error::Kind::config, "SeriesVector: missing entry '" + name + "'");
        return it->second;
    }

    void set(const std::string& name, TaylorSeries s) { entries.insert_or_assign(name, std::move(s)); }
};

} // namespace flatflight

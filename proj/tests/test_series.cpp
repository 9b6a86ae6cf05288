#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "flatflight/series.hpp"

using flatflight::Error;
using flatflight::TaylorSeries;

namespace {

TaylorSeries random_series(std::mt19937& rng, int order) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    TaylorSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = dist(rng);
    return s;
}

// Independent long-division oracle for a/b (quotient of polynomials as power
// series), used to check the division recurrence.
std::vector<double> long_division(const std::vector<double>& a, const std::vector<double>& b,
                                  int order) {
    std::vector<double> rem = a;
    rem.resize(static_cast<size_t>(order) + 1, 0.0);
    std::vector<double> q(static_cast<size_t>(order) + 1, 0.0);
    for (int k = 0; k <= order; ++k) {
        double c = rem[static_cast<size_t>(k)] / b[0];
        q[static_cast<size_t>(k)] = c;
        for (size_t j = 0; j < b.size() && k + j <= static_cast<size_t>(order); ++j)
            rem[static_cast<size_t>(k) + j] -= c * b[j];
    }
    return q;
}

} // namespace

TEST_CASE("product (1+t)(1-t) truncates to 1 - t^2") {
    TaylorSeries a = {1.0, 1.0, 0.0};
    TaylorSeries b = {1.0, -1.0, 0.0};
    TaylorSeries c = a * b;
    REQUIRE(c.order() == 2);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[2] == doctest::Approx(-1.0));
}

TEST_CASE("additive identity") {
    std::mt19937 rng(7);
    TaylorSeries a = random_series(rng, 5);
    TaylorSeries z(5);
    TaylorSeries c = a + z;
    for (int k = 0; k <= 5; ++k) CHECK(c[k] == a[k]);
}

TEST_CASE("geometric series 1/(1-t) against long-division oracle") {
    TaylorSeries one = TaylorSeries::constant(1.0, 3);
    TaylorSeries den = {1.0, -1.0, 0.0, 0.0};
    TaylorSeries q = one / den;
    auto oracle = long_division({1.0}, {1.0, -1.0}, 3);
    for (int k = 0; k <= 3; ++k) CHECK(q[k] == doctest::Approx(oracle[static_cast<size_t>(k)]));
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[1] == doctest::Approx(1.0));
    CHECK(q[2] == doctest::Approx(1.0));
    CHECK(q[3] == doctest::Approx(1.0));
}

TEST_CASE("division by zero constant term is an error") {
    TaylorSeries a = TaylorSeries::constant(1.0, 2);
    TaylorSeries b = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(a / b, Error);
}

TEST_CASE("order of arithmetic results is the minimum input order") {
    std::mt19937 rng(11);
    TaylorSeries a = random_series(rng, 6);
    TaylorSeries b = random_series(rng, 3);
    CHECK((a + b).order() == 3);
    CHECK((a * b).order() == 3);
    CHECK((a - b).order() == 3);
}

TEST_CASE("sin(t) at order 3 is t - t^3/6") {
    TaylorSeries t = TaylorSeries::variable(0.0, 3);
    TaylorSeries s = sin(t);
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(0.0));
    CHECK(s[3] == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("cos of the zero series is the constant 1") {
    TaylorSeries z(4);
    TaylorSeries c = cos(z);
    CHECK(c[0] == doctest::Approx(1.0));
    for (int k = 1; k <= 4; ++k) CHECK(c[k] == doctest::Approx(0.0));
}

TEST_CASE("sqrt(1+t) matches the binomial series") {
    TaylorSeries a = {1.0, 1.0, 0.0};
    TaylorSeries b = sqrt(a);
    // binomial oracle: C(1/2, k)
    double c0 = 1.0, c1 = 0.5, c2 = 0.5 * (0.5 - 1.0) / 2.0;
    CHECK(b[0] == doctest::Approx(c0));
    CHECK(b[1] == doctest::Approx(c1));
    CHECK(b[2] == doctest::Approx(c2));
    CHECK(b[2] == doctest::Approx(-1.0 / 8.0));
}

TEST_CASE("sqrt and tan domain violations") {
    CHECK_THROWS_AS(sqrt(TaylorSeries::constant(-1.0, 2)), Error);
    CHECK_THROWS_AS(tan(TaylorSeries::variable(M_PI / 2.0, 2)), Error);
}

TEST_CASE("derivative basics") {
    TaylorSeries t2 = {0.0, 0.0, 1.0};
    TaylorSeries d = t2.derivative();
    REQUIRE(d.order() == 1);
    CHECK(d[0] == doctest::Approx(0.0));
    CHECK(d[1] == doctest::Approx(2.0));

    TaylorSeries c = TaylorSeries::constant(4.0, 3);
    TaylorSeries dc = c.derivative();
    REQUIRE(dc.order() == 2);
    for (int k = 0; k <= 2; ++k) CHECK(dc[k] == doctest::Approx(0.0));

    TaylorSeries poly = {1.0, 3.0, 5.0};
    TaylorSeries dp = poly.derivative();
    CHECK(dp[0] == doctest::Approx(3.0));
    CHECK(dp[1] == doctest::Approx(10.0));
}

TEST_CASE("derivative of an order-0 series is an error, never zero-padded") {
    TaylorSeries c = TaylorSeries::constant(1.0, 0);
    CHECK_THROWS_AS(c.derivative(), Error);
}

TEST_CASE("derivative after antiderivative is the identity") {
    std::mt19937 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        TaylorSeries a = random_series(rng, 7);
        TaylorSeries back = a.antiderivative(0.5).derivative();
        REQUIRE(back.order() == a.order());
        for (int k = 0; k <= a.order(); ++k) CHECK(back[k] == doctest::Approx(a[k]));
    }
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 30; ++rep) {
        TaylorSeries a = random_series(rng, 6);
        TaylorSeries b = random_series(rng, 6);
        TaylorSeries c = random_series(rng, 6);

        TaylorSeries lhs = (a * b) * c;
        TaylorSeries rhs = a * (b * c);
        for (int k = 0; k <= 6; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));

        TaylorSeries d1 = a * (b + c);
        TaylorSeries d2 = a * b + a * c;
        for (int k = 0; k <= 6; ++k) CHECK(d1[k] == doctest::Approx(d2[k]).epsilon(1e-12));

        TaylorSeries s1 = (a + b) + c;
        TaylorSeries s2 = a + (b + c);
        for (int k = 0; k <= 6; ++k) CHECK(s1[k] == doctest::Approx(s2[k]).epsilon(1e-12));
    }
}

TEST_CASE("division is the inverse of multiplication") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        TaylorSeries a = random_series(rng, 8);
        TaylorSeries b = random_series(rng, 8);
        if (std::abs(b[0]) < 0.1) b[0] = 1.0;
        TaylorSeries q = a / b;
        TaylorSeries back = q * b;
        for (int k = 0; k <= 8; ++k) CHECK(back[k] == doctest::Approx(a[k]).epsilon(1e-10));
    }
}

TEST_CASE("elementary functions agree with pointwise evaluation") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-0.4, 0.4);
    for (int rep = 0; rep < 10; ++rep) {
        double x0 = dist(rng);
        TaylorSeries v = TaylorSeries::variable(x0, 6);
        CHECK(sin(v).value() == doctest::Approx(std::sin(x0)));
        CHECK(cos(v).value() == doctest::Approx(std::cos(x0)));
        CHECK(atan(v).value() == doctest::Approx(std::atan(x0)));
        CHECK(asin(v).value() == doctest::Approx(std::asin(x0)));
        CHECK(exp(v).value() == doctest::Approx(std::exp(x0)));
        CHECK(sqrt(v + 2.0).value() == doctest::Approx(std::sqrt(x0 + 2.0)));
    }
}

TEST_CASE("series evaluation tracks the generating function") {
    // exp series evaluated off the base point vs std::exp
    TaylorSeries t = TaylorSeries::variable(0.0, 12);
    TaylorSeries e = exp(t);
    CHECK(e.eval(0.3) == doctest::Approx(std::exp(0.3)).epsilon(1e-10));

    TaylorSeries s = sin(t * 2.0);
    CHECK(s.eval(0.2) == doctest::Approx(std::sin(0.4)).epsilon(1e-10));
}

TEST_CASE("atan2 series is quadrant-correct and consistent with atan") {
    TaylorSeries x = {-1.0, 0.3, 0.1};
    TaylorSeries y = {0.5, -0.2, 0.4};
    TaylorSeries chi = atan2(y, x);
    CHECK(chi.value() == doctest::Approx(std::atan2(0.5, -1.0)));
    // derivative of atan2(y,x) equals (x y' - y x')/(x^2+y^2)
    TaylorSeries lhs = chi.derivative();
    TaylorSeries rhs = (x.truncated(1) * y.derivative() - y.truncated(1) * x.derivative()) /
                       (x * x + y * y).truncated(1);
    for (int k = 0; k <= 1; ++k) CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
}

TEST_CASE("max order is enforced") {
    CHECK_THROWS_AS(TaylorSeries(65), Error);
    CHECK_NOTHROW(TaylorSeries(64));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flatflight/expression.hpp"
#include "flatflight/aircraft_io.hpp"

using flatflight::Error;
using flatflight::Expression;
using flatflight::TaylorSeries;

TEST_CASE("affine expression with a unit suffix") {
    auto e = Expression::parse("140*kt*t");
    TaylorSeries s = e.series(0.0, 3);
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(140.0 * flatflight::units::kt));
    CHECK(s[2] == doctest::Approx(0.0));
    CHECK(s[3] == doctest::Approx(0.0));
}

TEST_CASE("arctan sigmoid centered at its inflection") {
    auto e = Expression::parse("0.5 + arctan((t-30)/5)/pi");
    TaylorSeries s = e.series(30.0, 2);
    CHECK(s[0] == doctest::Approx(0.5));
    CHECK(s[1] == doctest::Approx(1.0 / (5.0 * M_PI)));
    CHECK(s[2] == doctest::Approx(0.0));
}

TEST_CASE("cosine with phase, chain rule at t0 = 0") {
    auto e = Expression::parse("60*cos(t/100+2)");
    TaylorSeries s = e.series(0.0, 1);
    CHECK(s[0] == doctest::Approx(60.0 * std::cos(2.0)));
    CHECK(s[1] == doctest::Approx(-0.6 * std::sin(2.0)));
}

TEST_CASE("series composition agrees with the series library") {
    auto e = Expression::parse("sin(t)");
    TaylorSeries got = e.series(0.4, 8);
    TaylorSeries want = sin(TaylorSeries::variable(0.4, 8));
    for (int k = 0; k <= 8; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-14));
}

TEST_CASE("integer power notation") {
    auto e = Expression::parse("-300 + 4.905*t^2");
    TaylorSeries s = e.series(1.0, 2);
    CHECK(s[0] == doctest::Approx(-300.0 + 4.905));
    CHECK(s[1] == doctest::Approx(2.0 * 4.905));
    CHECK(s[2] == doctest::Approx(4.905));
    CHECK(e.eval(2.0) == doctest::Approx(-300.0 + 4.905 * 4.0));
}

TEST_CASE("point evaluation matches the series constant term") {
    auto e = Expression::parse("29.10852587*t+50*sin(t/60)");
    for (double t0 : {0.0, 5.0, 17.3, 42.0}) {
        CHECK(e.eval(t0) == doctest::Approx(e.series(t0, 4).value()).epsilon(1e-14));
    }
}

TEST_CASE("typographic minus is accepted") {
    auto e = Expression::parse("0.5 + arctan((t−30)/5)/pi");
    CHECK(e.eval(30.0) == doctest::Approx(0.5));
}

TEST_CASE("parse failures carry positions") {
    CHECK_THROWS_AS(Expression::parse("1 + "), Error);
    CHECK_THROWS_AS(Expression::parse("bogus(t)"), Error);
    CHECK_THROWS_AS(Expression::parse("1 + q"), Error);
    CHECK_THROWS_AS(Expression::parse("sin(t) extra"), Error);
    CHECK_THROWS_AS(Expression::parse("t^x"), Error);
}

TEST_CASE("round trip through text") {
    auto e = Expression::parse("1 + 2*sin(t/7) - t^3/9");
    auto e2 = Expression::parse(e.text());
    for (double t0 : {0.0, 1.0, -3.5}) CHECK(e.eval(t0) == doctest::Approx(e2.eval(t0)));
}

TEST_CASE("unit constants") {
    CHECK(Expression::parse("kt").eval(0.0) == doctest::Approx(0.514444));
    CHECK(Expression::parse("ft").eval(0.0) == doctest::Approx(0.3048));
    CHECK(Expression::parse("deg").eval(0.0) == doctest::Approx(M_PI / 180.0));
    CHECK(Expression::parse("10*deg").eval(0.0) == doctest::Approx(0.17453292519943295));
}

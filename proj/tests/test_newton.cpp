#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flatflight/newton.hpp"

using flatflight::NewtonOptions;
using flatflight::newton_point;
using flatflight::newton_series;
using flatflight::TaylorSeries;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

} // namespace

TEST_CASE("newton_point finds the root of x^2 - 4 from x0 = 3") {
    auto res = newton_point(
        [](const Eigen::VectorXd& x) { return vec1(x[0] * x[0] - 4.0); }, vec1(3.0),
        {1e-10, 50});
    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exact start converges in zero iterations") {
    auto res = newton_point([](const Eigen::VectorXd& x) { return x; }, vec1(0.0));
    CHECK(res.converged);
    CHECK(res.iterations == 0);
    CHECK(res.x[0] == 0.0);
}

TEST_CASE("2-variable linear system against a direct solve") {
    auto residual = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(2);
        r << x[0] + x[1] - 3.0, x[0] - x[1] - 1.0;
        return r;
    };
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(2);
    auto res = newton_point(residual, x0, {1e-12, 20});

    Eigen::Matrix2d A;
    A << 1, 1, 1, -1;
    Eigen::Vector2d b(3, 1);
    Eigen::Vector2d expect = A.colPivHouseholderQr().solve(b);

    CHECK(res.converged);
    CHECK(res.x[0] == doctest::Approx(expect[0]));
    CHECK(res.x[1] == doctest::Approx(expect[1]));
    CHECK(res.x[0] == doctest::Approx(2.0));
    CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("non-convergence reports the last iterate instead of throwing") {
    // x^2 + 1 has no real root
    auto res = newton_point(
        [](const Eigen::VectorXd& x) { return vec1(x[0] * x[0] + 1.0); }, vec1(1.0), {1e-10, 15});
    CHECK_FALSE(res.converged);
    CHECK(res.residual_norm > 0.0);
    CHECK(std::isfinite(res.x[0]));
}

TEST_CASE("quadratic residual decrease on a smooth system") {
    auto residual = [](const Eigen::VectorXd& x) { return vec1(std::exp(x[0]) - 2.0); };
    auto jacobian = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd J(1, 1);
        J << std::exp(x[0]);
        return J;
    };
    // run with increasing iteration caps; identical deterministic path
    std::vector<double> norms;
    for (int cap = 0; cap <= 5; ++cap) {
        auto res = newton_point(residual, vec1(1.5), {1e-300, cap}, jacobian);
        norms.push_back(res.residual_norm);
    }
    // once inside the quadratic basin the norm square-roots its exponent
    for (size_t k = 1; k + 1 < norms.size(); ++k) {
        if (norms[k] < 1e-2 && norms[k] > 1e-14) {
            CHECK(norms[k + 1] <= 10.0 * norms[k] * norms[k]);
        }
    }
    CHECK(norms.back() < 1e-12);

    // the default finite-difference Jacobian converges too, just with a
    // linear tail below ~1e-7
    auto fd = newton_point(residual, vec1(1.5), {1e-10, 8});
    CHECK(fd.converged);
}

TEST_CASE("newton_series solves y^2 = 1 + t to the binomial series") {
    auto residual = [](const auto& x) {
        using Series = std::decay_t<decltype(x[0])>;
        Series t = Series::variable(0.0, x[0].order());
        std::vector<Series> r;
        r.push_back(x[0] * x[0] - (t + 1.0));
        return r;
    };
    std::vector<TaylorSeries> x0 = {TaylorSeries::constant(1.0, 0)};
    auto y = newton_series(residual, x0, 2);
    REQUIRE(y.size() == 1);
    CHECK(y[0][0] == doctest::Approx(1.0));
    CHECK(y[0][1] == doctest::Approx(0.5));
    CHECK(y[0][2] == doctest::Approx(-1.0 / 8.0));
}

TEST_CASE("constant residual needs no correction") {
    const double c = 3.25;
    auto residual = [&](const auto& x) {
        using Series = std::decay_t<decltype(x[0])>;
        std::vector<Series> r;
        r.push_back(x[0] - c);
        return r;
    };
    std::vector<TaylorSeries> x0 = {TaylorSeries::constant(c, 0)};
    auto y = newton_series(residual, x0, 4);
    CHECK(y[0][0] == doctest::Approx(c));
    for (int k = 1; k <= 4; ++k) CHECK(y[0][k] == doctest::Approx(0.0));
}

TEST_CASE("residual support doubles per Newton-on-series step") {
    // Run with target orders 2^s - 1 so exactly s steps execute, then measure
    // the first nonzero residual coefficient of the truncated iterate.
    auto residual_at = [](const TaylorSeries& y, int order) {
        TaylorSeries t = TaylorSeries::variable(0.0, order);
        return y.extended(order) * y.extended(order) - (t + 1.0);
    };
    auto residual = [](const auto& x) {
        using Series = std::decay_t<decltype(x[0])>;
        Series t = Series::variable(0.0, x[0].order());
        std::vector<Series> r;
        r.push_back(x[0] * x[0] - (t + 1.0));
        return r;
    };

    // initial iterate: support at order 1
    TaylorSeries y0 = TaylorSeries::constant(1.0, 0);
    TaylorSeries r0 = residual_at(y0, 4);
    CHECK(std::abs(r0[0]) < 1e-14);
    CHECK(std::abs(r0[1]) > 1e-3);

    for (int s = 1; s <= 3; ++s) {
        int target = (1 << s) - 1;
        auto y = newton_series(residual, {TaylorSeries::constant(1.0, 0)}, target);
        int support = 1 << s;
        TaylorSeries r = residual_at(y[0], support);
        for (int k = 0; k < support; ++k) {
            INFO("step ", s, " coefficient ", k);
            CHECK(std::abs(r[k]) < 1e-13);
        }
        CHECK(std::abs(r[support]) > 1e-9);
    }
}

TEST_CASE("truncated operator series for x' = y + eps y' on exp(2t)") {
    // For x = exp(2t), y = sum_i (-eps)^i x^(i+1) telescopes to 2 exp(2t)/(1+2 eps).
    const double eps = 0.1;
    const int terms = 12;
    TaylorSeries x = exp(TaylorSeries::variable(0.0, terms + 1) * 2.0);

    double sum = 0.0;
    double sign = 1.0;
    TaylorSeries d = x;
    for (int i = 0; i <= terms; ++i) {
        d = d.derivative();           // x^(i+1)
        sum += sign * d.value();      // at t = 0
        sign *= -eps;
    }

    const double closed_form = 2.0 / (1.0 + 2.0 * eps);
    CHECK(std::abs(sum - closed_form) / std::abs(closed_form) <= 1e-9);

    // and y indeed solves x' = y + eps y'
    TaylorSeries y = x.truncated(terms) * (2.0 / (1.0 + 2.0 * eps));
    TaylorSeries lhs = x.derivative().truncated(terms - 1);
    TaylorSeries rhs = y.truncated(terms - 1) + y.derivative() * eps;
    for (int k = 0; k + 1 <= terms - 1; ++k)
        CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "flatflight/aero.hpp"
#include "support.hpp"

using namespace flatflight;
using testsupport::make_test_aircraft;

namespace {

FlightPoint level_point() {
    FlightPoint pt;
    pt.V = 30.0;
    pt.alpha = 0.05;
    pt.F = 20.0;
    return pt;
}

} // namespace

TEST_CASE("gna_eval with all regressors zero keeps only constant terms") {
    auto pr = make_test_aircraft();
    auto C = gna_eval(pr.gna, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, pr);
    CHECK(C.CD == doctest::Approx(0.020));
    CHECK(C.Cy == doctest::Approx(0.0));
    CHECK(C.CL == doctest::Approx(0.030));
    CHECK(C.Cl == doctest::Approx(0.0));
    CHECK(C.Cm == doctest::Approx(0.040));
    CHECK(C.Cn == doctest::Approx(0.0));
}

TEST_CASE("single-term activation of the sideslip channel") {
    auto pr = make_test_aircraft();
    auto C = gna_eval(pr.gna, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, pr);
    // theta11 * beta plus the nonlinear beta terms of Cn only
    CHECK(C.Cy == doctest::Approx(-1.0 * 0.1));
}

TEST_CASE("rate regressors are scaled by the reference lengths") {
    auto pr = make_test_aircraft();
    double p = 0.3;
    auto C = gna_eval(pr.gna, 0.0, 0.0, p, 0.0, 0.0, 0.0, 0.0, 0.0, pr);
    // Cy picks up theta12 * (a p)
    CHECK(C.Cy == doctest::Approx(-0.05 * pr.a * p));
}

TEST_CASE("wind_frame_coeffs rotations") {
    double Cx, Cz;
    wind_frame_coeffs(0.1, 0.9, 0.0, Cx, Cz);
    CHECK(Cx == doctest::Approx(0.1));
    CHECK(Cz == doctest::Approx(0.9));

    wind_frame_coeffs(0.1, 0.9, M_PI / 2.0, Cx, Cz);
    CHECK(Cx == doctest::Approx(0.9));
    CHECK(Cz == doctest::Approx(-0.1));

    wind_frame_coeffs(0.05, 0.5, 0.1, Cx, Cz);
    CHECK(Cx == doctest::Approx(std::cos(0.1) * 0.05 + std::sin(0.1) * 0.5));
    CHECK(Cz == doctest::Approx(std::cos(0.1) * 0.5 - std::sin(0.1) * 0.05));
    CHECK(Cx == doctest::Approx(0.0997).epsilon(1e-3));
    CHECK(Cz == doctest::Approx(0.4925).epsilon(1e-3));
}

TEST_CASE("with zero thrust and zero airspeed only gravity survives") {
    auto pr = make_test_aircraft();
    FlightPoint pt;
    pt.V = 0.0;
    pt.gamma = 0.3;
    pt.mu = 0.2;
    auto f = forces_moments(pt, pr);
    const double gm = pr.g * pr.m;
    CHECK(f.X == doctest::Approx(-gm * std::sin(0.3)));
    CHECK(f.Y == doctest::Approx(gm * std::cos(0.3) * std::sin(0.2)));
    CHECK(f.Z == doctest::Approx(gm * std::cos(0.3) * std::cos(0.2)));
    CHECK(f.L == doctest::Approx(0.0));
    CHECK(f.M == doctest::Approx(0.0));
    CHECK(f.N == doctest::Approx(0.0));
}

TEST_CASE("equal thrust on both engines leaves no engine torque") {
    auto pr = make_test_aircraft();
    FlightPoint pt = level_point();
    pt.eta = 0.0;
    auto f0 = forces_moments(pt, pr);
    const double qbarS = 0.5 * pr.rho * pr.S * pt.V * pt.V;
    auto C = gna_eval(pr.gna, pt.alpha, pt.beta, pt.p, pt.q, pt.r, pt.delta_l, pt.delta_m,
                      pt.delta_n, pr);
    CHECK(f0.L == doctest::Approx(qbarS * pr.a * C.Cl));
    CHECK(f0.N == doctest::Approx(qbarS * pr.a * C.Cn));

    pt.eta = 0.5;
    auto f1 = forces_moments(pt, pr);
    CHECK(f1.L - f0.L == doctest::Approx(-pr.y_p * std::sin(pr.eps) * 0.5 * pt.F));
    CHECK(f1.N - f0.N == doctest::Approx(pr.y_p * std::cos(pr.eps) * 0.5 * pt.F));
}

TEST_CASE("aerodynamic force scales with V^2 at fixed angles and zero rates") {
    auto pr = make_test_aircraft();
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ang(-0.2, 0.2);
    for (int rep = 0; rep < 10; ++rep) {
        FlightPoint pt;
        pt.V = 25.0;
        pt.alpha = ang(rng);
        pt.beta = ang(rng);
        pt.gamma = ang(rng);
        pt.mu = ang(rng);
        pt.delta_l = 0.1 * ang(rng);
        pt.delta_m = 0.1 * ang(rng);
        pt.delta_n = 0.1 * ang(rng);

        auto f1 = forces_moments(pt, pr);
        FlightPoint pt2 = pt;
        pt2.V = 2.0 * pt.V;
        auto f2 = forces_moments(pt2, pr);

        const double gm = pr.g * pr.m;
        double aero1 = f1.X + gm * std::sin(pt.gamma);
        double aero2 = f2.X + gm * std::sin(pt.gamma);
        CHECK(aero2 == doctest::Approx(4.0 * aero1).epsilon(1e-10));

        double lift1 = f1.Z - gm * std::cos(pt.gamma) * std::cos(pt.mu);
        double lift2 = f2.Z - gm * std::cos(pt.gamma) * std::cos(pt.mu);
        CHECK(lift2 == doctest::Approx(4.0 * lift1).epsilon(1e-10));

        CHECK(f2.M == doctest::Approx(4.0 * f1.M).epsilon(1e-10));
    }
}

TEST_CASE("doubling rho doubles the aerodynamic part of m V'") {
    auto pr = make_test_aircraft();
    FlightPoint pt = level_point();
    pt.gamma = -0.05;
    auto d1 = dynamics_full(pt, pr);

    AircraftParams pr2 = pr;
    pr2.rho = 2.0 * pr.rho;
    auto d2 = dynamics_full(pt, pr2);

    // aero part of m V' = m V' - thrust part + gravity part
    const double gm = pr.g * pr.m;
    double thrust = pt.F * std::cos(pt.alpha + pr.eps) * std::cos(pt.beta);
    double aero1 = pr.m * d1[3] - thrust + gm * std::sin(pt.gamma);
    double aero2 = pr.m * d2[3] - thrust + gm * std::sin(pt.gamma);
    CHECK(aero2 == doctest::Approx(2.0 * aero1).epsilon(1e-10));
}

TEST_CASE("gna_eval on series agrees with the pointwise evaluation") {
    auto pr = make_test_aircraft();
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-0.3, 0.3);
    for (int rep = 0; rep < 10; ++rep) {
        double al = dist(rng), be = dist(rng), p = dist(rng), q = dist(rng), r = dist(rng);
        double dl = dist(rng), dm = dist(rng), dn = dist(rng);
        auto Cp = gna_eval(pr.gna, al, be, p, q, r, dl, dm, dn, pr);

        auto s = [&](double v) { return TaylorSeries::variable(v, 3); };
        auto Cs = gna_eval(pr.gna, s(al), s(be), s(p), s(q), s(r), s(dl), s(dm), s(dn), pr);
        CHECK(Cs.CD.value() == doctest::Approx(Cp.CD).epsilon(1e-13));
        CHECK(Cs.Cy.value() == doctest::Approx(Cp.Cy).epsilon(1e-13));
        CHECK(Cs.CL.value() == doctest::Approx(Cp.CL).epsilon(1e-13));
        CHECK(Cs.Cl.value() == doctest::Approx(Cp.Cl).epsilon(1e-13));
        CHECK(Cs.Cm.value() == doctest::Approx(Cp.Cm).epsilon(1e-13));
        CHECK(Cs.Cn.value() == doctest::Approx(Cp.Cn).epsilon(1e-13));
    }
}

TEST_CASE("simplified dynamics with the true values matches the full model") {
    auto pr = make_test_aircraft();
    FlightPoint pt = level_point();
    pt.beta = 0.1;
    pt.mu = -0.15;
    pt.p = 0.2;
    pt.q = -0.1;
    pt.r = 0.05;
    pt.delta_l = 0.02;
    pt.delta_m = -0.03;
    pt.delta_n = 0.04;

    auto full = dynamics_full(pt, pr);
    auto simp = dynamics_simplified(pt, pr, {pt.p, pt.q, pt.r, pt.delta_l, pt.delta_m, pt.delta_n});
    for (int k = 0; k < 9; ++k)
        CHECK(simp[static_cast<size_t>(k)] ==
              doctest::Approx(full[static_cast<size_t>(k)]).epsilon(1e-13));

    // and the frozen force block ignores the point's own rate values
    FlightPoint pt2 = pt;
    pt2.delta_n = 0.4;
    auto simp2 = dynamics_simplified(pt2, pr, {pt.p, pt.q, pt.r, pt.delta_l, pt.delta_m, pt.delta_n});
    CHECK(simp2[3] == doctest::Approx(simp[3]).epsilon(1e-13));
}

TEST_CASE("inertia inverse round trip") {
    auto pr = make_test_aircraft();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::Vector3d v(dist(rng), dist(rng), dist(rng));
        Eigen::Vector3d back = pr.inertia_matrix() * (pr.inertia_inverse() * v);
        CHECK((back - v).norm() <= 1e-12 * v.norm());
    }
}

TEST_CASE("lateral symmetry of level symmetric flight") {
    auto pr = make_test_aircraft();
    FlightPoint pt = level_point();
    pt.beta = 0.0;
    pt.mu = 0.0;
    auto f = forces_moments(pt, pr);
    CHECK(f.Y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.L == doctest::Approx(0.0));
    CHECK(f.N == doctest::Approx(0.0));
}

TEST_CASE("chart violations are reported") {
    auto pr = make_test_aircraft();
    FlightPoint pt = level_point();
    pt.gamma = M_PI / 2.0;
    CHECK_THROWS_AS(dynamics_full(pt, pr), Error);

    FlightPoint pt2 = level_point();
    pt2.beta = M_PI / 2.0;
    CHECK_THROWS_AS(dynamics_full(pt2, pr), Error);
}

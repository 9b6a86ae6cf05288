#pragma once

#include <array>

#include "flatflight/aero.hpp"

namespace testsupport {

using flatflight::GnaTerm;

inline GnaTerm term(double theta, std::array<int, 8> expo) { return {theta, expo}; }

// Plausible small transport model with the full 45-coefficient structure.
// Values are round numbers, not a real aircraft; trim-table tests use the
// bundled data files instead.
inline flatflight::AircraftParams make_test_aircraft() {
    flatflight::AircraftParams pr;
    pr.name = "test";
    pr.m = 22.5;
    pr.g = 9.81;
    pr.S = 0.5483;
    pr.rho = 1.225;
    pr.a = 1.0438;
    pr.b = 0.1395;
    pr.eps = 0.02;
    pr.y_p = 0.25;
    pr.inertia = {1.80, 5.77, 7.40, 0.16};

    auto& g = pr.gna;
    // CD: 1, a, a*qt, a*dm, a^2, a^2*qt, dm, a^3, a^3*qt, a^4
    g.CD = {
        term(0.020, {0, 0, 0, 0, 0, 0, 0, 0}),
        term(0.100, {1, 0, 0, 0, 0, 0, 0, 0}),
        term(1.000, {1, 0, 0, 1, 0, 0, 0, 0}),
        term(0.300, {1, 0, 0, 0, 0, 0, 1, 0}),
        term(1.500, {2, 0, 0, 0, 0, 0, 0, 0}),
        term(2.000, {2, 0, 0, 1, 0, 0, 0, 0}),
        term(0.050, {0, 0, 0, 0, 0, 0, 1, 0}),
        term(0.500, {3, 0, 0, 0, 0, 0, 0, 0}),
        term(1.000, {3, 0, 0, 1, 0, 0, 0, 0}),
        term(1.200, {4, 0, 0, 0, 0, 0, 0, 0}),
    };
    // Cy: b, pt, rt, dl, dn
    g.Cy = {
        term(-1.000, {0, 1, 0, 0, 0, 0, 0, 0}),
        term(-0.050, {0, 0, 1, 0, 0, 0, 0, 0}),
        term(0.200, {0, 0, 0, 0, 1, 0, 0, 0}),
        term(-0.010, {0, 0, 0, 0, 0, 1, 0, 0}),
        term(0.250, {0, 0, 0, 0, 0, 0, 0, 1}),
    };
    // CL: 1, a, qt, dm, a*qt, a^2, a^3, a^4
    g.CL = {
        term(0.030, {0, 0, 0, 0, 0, 0, 0, 0}),
        term(5.000, {1, 0, 0, 0, 0, 0, 0, 0}),
        term(2.000, {0, 0, 0, 1, 0, 0, 0, 0}),
        term(0.400, {0, 0, 0, 0, 0, 0, 1, 0}),
        term(1.000, {1, 0, 0, 1, 0, 0, 0, 0}),
        term(1.000, {2, 0, 0, 0, 0, 0, 0, 0}),
        term(-20.000, {3, 0, 0, 0, 0, 0, 0, 0}),
        term(2.000, {4, 0, 0, 0, 0, 0, 0, 0}),
    };
    // Cl: b, pt, rt, dl, dn
    g.Cl = {
        term(-0.060, {0, 1, 0, 0, 0, 0, 0, 0}),
        term(-0.400, {0, 0, 1, 0, 0, 0, 0, 0}),
        term(0.060, {0, 0, 0, 0, 1, 0, 0, 0}),
        term(-0.050, {0, 0, 0, 0, 0, 1, 0, 0}),
        term(0.012, {0, 0, 0, 0, 0, 0, 0, 1}),
    };
    // Cm: 1, a, qt, dm, a*qt, a^2*qt, a^2*dm, a^3*qt, a^3*dm, a^4
    g.Cm = {
        term(0.040, {0, 0, 0, 0, 0, 0, 0, 0}),
        term(-0.900, {1, 0, 0, 0, 0, 0, 0, 0}),
        term(-4.000, {0, 0, 0, 1, 0, 0, 0, 0}),
        term(-1.300, {0, 0, 0, 0, 0, 0, 1, 0}),
        term(-1.000, {1, 0, 0, 1, 0, 0, 0, 0}),
        term(-1.000, {2, 0, 0, 1, 0, 0, 0, 0}),
        term(-0.500, {2, 0, 0, 0, 0, 0, 1, 0}),
        term(-1.000, {3, 0, 0, 1, 0, 0, 0, 0}),
        term(-0.300, {3, 0, 0, 0, 0, 0, 1, 0}),
        term(-0.100, {4, 0, 0, 0, 0, 0, 0, 0}),
    };
    // Cn: b, pt, rt, dl, dn, b^2, b^3
    g.Cn = {
        term(0.160, {0, 1, 0, 0, 0, 0, 0, 0}),
        term(0.010, {0, 0, 1, 0, 0, 0, 0, 0}),
        term(-0.120, {0, 0, 0, 0, 1, 0, 0, 0}),
        term(0.010, {0, 0, 0, 0, 0, 1, 0, 0}),
        term(-0.120, {0, 0, 0, 0, 0, 0, 0, 1}),
        term(0.100, {0, 2, 0, 0, 0, 0, 0, 0}),
        term(-0.200, {0, 3, 0, 0, 0, 0, 0, 0}),
    };
    return pr;
}

} // namespace testsupport

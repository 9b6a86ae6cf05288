#pragma once

#include <string>

#include "flatflight/aero.hpp"
#include "flatflight/expression.hpp"
#include "flatflight/newton.hpp"
#include "flatflight/series.hpp"

namespace flatflight {

// Which quantity completes (x, y, z) to a flat output, and the combination
// weights when a time-varying mix of beta and mu is used.
struct FlatOutputChoice {
    enum class Kind { beta, mu, thrust, combo };
    Kind kind = Kind::beta;
    Expression f1, f2; // zeta = f1(t)*beta + f2(t)*mu when kind == combo

    static FlatOutputChoice of(Kind k) {
        FlatOutputChoice c;
        c.kind = k;
        return c;
    }
};

// Flat-output time functions. Generators are closed-form expressions, so
// series of any order are exact; trajectories are never differentiated
// numerically.
struct FlatOutputTrajectory {
    Expression x, y, z, zeta;
};

// Which control is solved at stage 4; the other of (delta_n, eta) is a known
// time function (possibly constant zero).
struct ControlMode {
    enum class FourthControl { delta_n, eta };
    FourthControl u4 = FourthControl::delta_n;
    Expression known; // eta(t) when solving delta_n; delta_n(t) when solving eta
};

struct PlanOptions {
    double newton_tol = 1e-11;  // relative to the force scale m*g
    int newton_max_iter = 50;
    double singularity_threshold = 1e-6; // relative to (rho S V^2 / 2)^2
};

// Warm-start memory for the stage-2 Newton solves, owned by the caller (one
// per planning stream).
struct Stage2Warm {
    bool valid = false;
    double alpha = 0.0, beta = 0.0, mu = 0.0, F = 0.0;
    bool chi_valid = false;
    double chi = 0.0; // previous heading constant, for continuity unwinding
};

struct Stage1Result {
    TaylorSeries V, gamma, chi;
};

struct Stage2Result {
    TaylorSeries alpha, beta, mu, F;
};

struct Stage3Result {
    TaylorSeries p, q, r;
};

struct Stage4Result {
    TaylorSeries delta_l, delta_m, delta_n, eta;
};

struct SingularityReport {
    std::string condition; // which determinant: "beta_output", "mu_output", "thrust_output"
    double det = 0.0;      // force^2 units
    double scale = 0.0;    // (rho S V^2 / 2)^2, the thresholding scale
};

// Stage 1: position series to speed and velocity angles. Orders drop by one.
Stage1Result stage1_invert(const TaylorSeries& xs, const TaylorSeries& ys,
                           const TaylorSeries& zs);

struct Stage2Inputs {
    TaylorSeries V, gamma, chi; // from stage 1, order m
    TaylorSeries zeta;          // flat-output series, order >= m-1
    TaylorSeries f1, f2;        // combo weights (order >= m-1 when used)
    HEstimate<TaylorSeries> h;  // frozen force-block values, order >= m-1
};

// Stage 2: Newton on constants, then Newton on series, for (alpha, beta, mu,
// F) satisfying the force equations and the flat-output definition.
Stage2Result stage2_solve(const AircraftParams& pr, const Stage2Inputs& in,
                          const FlatOutputChoice& choice, Stage2Warm& warm,
                          const PlanOptions& opt);

// Stage 3: explicit wind-axes kinematics, one linear evaluation per order.
Stage3Result stage3_solve(const TaylorSeries& alpha, const TaylorSeries& beta,
                          const TaylorSeries& mu, const TaylorSeries& gamma,
                          const TaylorSeries& gammadot, const TaylorSeries& chidot);

// Stage 4: torque balance, linear in the unknown controls.
Stage4Result stage4_solve(const AircraftParams& pr, const TaylorSeries& V,
                          const TaylorSeries& alpha, const TaylorSeries& beta,
                          const TaylorSeries& p, const TaylorSeries& q, const TaylorSeries& r,
                          const TaylorSeries& F, ControlMode::FourthControl u4,
                          const TaylorSeries& known);

// Finite-difference determinant of the 2x2 reduced stage-2 system for the
// given flat-output choice, evaluated at the point. Callers threshold it.
SingularityReport singularity_check(const FlightPoint& pt, const FlatOutputChoice& choice,
                                    const AircraftParams& pr);

// Full staged inversion at one base time: stage-h outputs carry order
// kappa - h + 1 counting inputs at kappa (positions kappa; V/gamma/chi
// kappa-1; alpha/beta/mu/F kappa-2; p/q/r kappa-3; deflections kappa-4).
SeriesVector flat_parametrization(double t0, int kappa, const FlatOutputTrajectory& traj,
                                  const FlatOutputChoice& choice, const SeriesVector& h_estimate,
                                  const ControlMode& mode, Stage2Warm& warm,
                                  const AircraftParams& pr, const PlanOptions& opt);

} // namespace flatflight

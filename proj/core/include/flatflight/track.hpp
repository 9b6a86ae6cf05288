#pragma once

#include <vector>

#include <Eigen/Dense>

#include "flatflight/flatplan.hpp"

namespace flatflight {

// Decay rates for the integral error chains. For the beta/mu flat outputs the
// chain orders are (3, 5, 5, 3) over I1..I4; for the thrust output only
// I1..I3 are used and every chain has order 5.
struct PoleConfig {
    std::vector<double> lambda1, lambda2, lambda3, lambda4;

    void validate(FlatOutputChoice::Kind kind) const;
};

// Linearized dynamics over the augmented error state
//   [I1, I2, I3, I4, dx, dy, dz, dV, dgamma, dchi, dalpha, dbeta, dmu, dp, dq, dr]
// with controls [dF, ddelta_l, ddelta_m, du4].
struct LinearSystem {
    Eigen::MatrixXd A; // 16 x 16
    Eigen::MatrixXd B; // 16 x 4
};

constexpr int kAugStates = 16;

FlightPoint point_from_series(const SeriesVector& sv);

// Jacobian of the full dynamics (exact, propagated through dual scalars)
// augmented with the integral rows, evaluated at the planned point.
LinearSystem linearize(const FlightPoint& pt, FlatOutputChoice::Kind zeta_kind,
                       ControlMode::FourthControl u4, const AircraftParams& pr);

// Same but with the force-block arguments frozen at the planned values, which
// gives the staged chain structure the gain construction relies on.
LinearSystem linearize_design(const FlightPoint& pt, FlatOutputChoice::Kind zeta_kind,
                              ControlMode::FourthControl u4, const AircraftParams& pr);

// Per-step gain rows: corrections = C * [I; dstate].
struct StepGains {
    Eigen::MatrixXd C; // 4 x 16, rows dF, ddelta_l, ddelta_m, du4
};

StepGains design_feedback(const LinearSystem& design, const PoleConfig& poles,
                          FlatOutputChoice::Kind kind);

struct FeedbackLaw {
    std::vector<double> times;
    std::vector<StepGains> steps;
    FlatOutputChoice::Kind zeta_kind = FlatOutputChoice::Kind::beta;
    ControlMode::FourthControl u4 = ControlMode::FourthControl::delta_n;
};

FeedbackLaw design_feedback_along(const std::vector<double>& times,
                                  const std::vector<FlightPoint>& planned,
                                  const PoleConfig& poles, FlatOutputChoice::Kind kind,
                                  ControlMode::FourthControl u4, const AircraftParams& pr);

struct ErrorState {
    std::array<double, 4> I{};       // I1..I4
    std::array<double, 12> delta{};  // state errors, canonical order
};

// Piecewise-constant (zero-order hold) evaluation of the step gains.
Eigen::Vector4d feedback_eval(const FeedbackLaw& law, const ErrorState& err, double t);

// The functional rows of one chain under the closed loop, for spectral
// verification: row k is the k-th derivative functional of I_p.
std::vector<Eigen::RowVectorXd> chain_functionals(const LinearSystem& design,
                                                  const StepGains& gains,
                                                  FlatOutputChoice::Kind kind, int p);

} // namespace flatflight

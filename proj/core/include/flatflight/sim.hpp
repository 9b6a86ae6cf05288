#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatflight/genflat.hpp"
#include "flatflight/track.hpp"

namespace flatflight {

// Per-time-step, per-iteration series table for all states and controls.
struct TrajectoryPlan {
    std::vector<double> times; // uniform grid t0..tn
    FlatOutputChoice choice;
    IterationPlan iterations;
    ControlMode mode;
    // table[quantity][step i][iterate j]
    std::map<std::string, std::vector<std::vector<TaylorSeries>>> table;

    int steps() const { return static_cast<int>(times.empty() ? 0 : times.size()); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }

    const TaylorSeries& at(const std::string& quantity, size_t i, int j) const;
    FlightPoint point_at(size_t i, int j) const;
};

// Plans the whole grid: one pass per iterate j, warm starts chained across
// steps within a pass, the previous iterate feeding the force-block estimate.
TrajectoryPlan motion_planning(double t_begin, double t_end, int n_steps,
                               const FlatOutputTrajectory& traj, const FlatOutputChoice& choice,
                               const IterationPlan& plan, const ControlMode& mode,
                               const AircraftParams& pr, const PlanOptions& opt,
                               bool verbose = false);

// Convex blend of the two local expansions bracketing t:
// [(t_{i+1}-t) s_i(t-t_i) + (t-t_i) s_{i+1}(t-t_{i+1})]/(t_{i+1}-t_i).
double blend_eval(const TrajectoryPlan& plan, const std::string& quantity, int j, double t);

enum class SimMode { open_loop, feedback };

struct SimulateConfig {
    int substeps = 20;      // RK4 sub-steps per planning interval
    int j = -1;             // which iterate supplies the controls; -1 = last
    std::map<std::string, double> perturbation; // added to the initial state
    bool verbose = false;
};

struct SimulationResult {
    std::vector<double> t;
    std::vector<std::array<double, 12>> state;      // canonical order
    std::vector<std::array<double, 4>> integrals;   // I1..I4
    std::vector<std::array<double, 5>> controls;    // applied F, eta, delta_l, delta_m, delta_n
    int j = 0;                                      // iterate the controls came from
};

// Fixed-step classical RK4 on the full model; controls are blended plan values
// plus feedback corrections in feedback mode. Integral states ride along as
// extra ODE states.
SimulationResult simulate(const TrajectoryPlan& plan, const AircraftParams& pr, SimMode mode,
                          const FeedbackLaw* law, const SimulateConfig& config);

struct QuantityError {
    double max_abs = 0.0;
    double rms = 0.0;
};

// Max/RMS tracking errors against iterate j of the plan over a trailing
// window (seconds; longer than the horizon clips to the horizon).
std::map<std::string, QuantityError> tracking_metrics(const SimulationResult& result,
                                                      const TrajectoryPlan& plan, int j,
                                                      double window_seconds);

// --------------------------------------------------------------------------
// Plan verification helpers.
// --------------------------------------------------------------------------

struct EquationResiduals {
    std::map<std::string, TaylorSeries> residual; // per state equation
    std::map<std::string, double> scale;          // characteristic magnitude per equation
};

// Residual series of the staged model equations for one planned step. The
// force block is evaluated with the same frozen estimate h the iterate was
// computed against; the torque block uses the step's own series.
EquationResiduals plan_step_residuals(const SeriesVector& step, const SeriesVector& h,
                                      const AircraftParams& pr);

// RMS over equations of the relative full-model residual at the constant
// terms of step i, iterate j.
double full_residual_rms(const TrajectoryPlan& plan, size_t i, int j, const AircraftParams& pr);

// The frozen estimate that produced iterate j at step i (iterate j-1, or the
// known-control seed for j = 0).
SeriesVector h_estimate_for(const TrajectoryPlan& plan, size_t i, int j);

} // namespace flatflight

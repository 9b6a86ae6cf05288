#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatflight/flatplan.hpp"

namespace flatflight {

// Constant-control straight-line trim: 9 equations between the 13 quantities
// {V, gamma, chi_dot, F} u {alpha, beta, mu} u {p, q, r} u {delta_l, delta_m,
// delta_n}; exactly 4 must be fixed. eta is a parameter, not an unknown.
struct TrimProblem {
    std::map<std::string, double> fixed;
    std::map<std::string, double> guesses;
    double eta = 0.0;
};

enum class TrimModel {
    full,      // all 9 zero-derivative equations on the full dynamics
    simplified // force block frozen to h; only the Xi2 equations are solved
};

FlightPoint calibrate(const TrimProblem& problem, const AircraftParams& pr,
                      TrimModel model = TrimModel::full,
                      const std::array<double, 6>& h = {0, 0, 0, 0, 0, 0},
                      const NewtonOptions& options = {1e-10, 60});

// Order bookkeeping of the iterated parametrization: kappa0 = e + r + J*L,
// and iterate j runs at kappa0 - j*L.
struct IterationPlan {
    int J = 4; // refinement iterations
    int e = 1; // target control order
    int L = 2; // order loss per iteration
    int r = 4; // number of stages

    int kappa0() const { return e + r + J * L; }
    int kappa(int j) const { return kappa0() - j * L; }

    void validate() const {
        if (J < 0 || e < 1 || L < 1 || r < 1)
            throw Error(Error::Kind::config, "iteration plan: need J >= 0, e >= 1, L, r >= 1");
        if (kappa0() > TaylorSeries::kMaxOrder)
            throw Error(Error::Kind::config,
                        "iteration plan: kappa0 = " + std::to_string(kappa0()) +
                            " exceeds the maximum series order");
    }
};

// Runs iterates j = 0..J of the refinement at one base time, each feeding the
// next one's frozen force-block estimate. All iterates are returned so
// convergence is observable. v seeds iterate 0 (missing entries are zero).
std::vector<SeriesVector> generalized_flat_parametrization(
    double t0, const FlatOutputTrajectory& traj, const FlatOutputChoice& choice,
    const IterationPlan& plan, const SeriesVector& v, const ControlMode& mode,
    const AircraftParams& pr, const PlanOptions& opt, std::vector<Stage2Warm>* warms = nullptr);

} // namespace flatflight

#include "flatflight/genflat.hpp"

#include <algorithm>
#include <cmath>

namespace flatflight {

namespace {

const std::vector<std::string> kTrimQuantities = {"V",  "gamma",   "chi_dot", "F",
                                                  "alpha", "beta",    "mu",      "p",
                                                  "q",     "r",       "delta_l", "delta_m",
                                                  "delta_n"};

double quantity(const FlightPoint& pt, double chi_dot, const std::string& name) {
    if (name == "V") return pt.V;
    if (name == "gamma") return pt.gamma;
    if (name == "chi_dot") return chi_dot;
    if (name == "F") return pt.F;
    if (name == "alpha") return pt.alpha;
    if (name == "beta") return pt.beta;
    if (name == "mu") return pt.mu;
    if (name == "p") return pt.p;
    if (name == "q") return pt.q;
    if (name == "r") return pt.r;
    if (name == "delta_l") return pt.delta_l;
    if (name == "delta_m") return pt.delta_m;
    if (name == "delta_n") return pt.delta_n;
    throw Error(Error::Kind::config, "trim: unknown quantity '" + name + "'");
}

void set_quantity(FlightPoint& pt, double& chi_dot, const std::string& name, double v) {
    if (name == "V") pt.V = v;
    else if (name == "gamma") pt.gamma = v;
    else if (name == "chi_dot") chi_dot = v;
    else if (name == "F") pt.F = v;
    else if (name == "alpha") pt.alpha = v;
    else if (name == "beta") pt.beta = v;
    else if (name == "mu") pt.mu = v;
    else if (name == "p") pt.p = v;
    else if (name == "q") pt.q = v;
    else if (name == "r") pt.r = v;
    else if (name == "delta_l") pt.delta_l = v;
    else if (name == "delta_m") pt.delta_m = v;
    else if (name == "delta_n") pt.delta_n = v;
    else
        throw Error(Error::Kind::config, "trim: unknown quantity '" + name + "'");
}

} // namespace

FlightPoint calibrate(const TrimProblem& problem, const AircraftParams& pr, TrimModel model,
                      const std::array<double, 6>& h, const NewtonOptions& options) {
    if (problem.fixed.size() != 4)
        throw Error(Error::Kind::config, "trim: exactly 4 quantities must be fixed, got " +
                                             std::to_string(problem.fixed.size()));
    for (const auto& [name, _] : problem.fixed)
        if (std::find(kTrimQuantities.begin(), kTrimQuantities.end(), name) ==
            kTrimQuantities.end())
            throw Error(Error::Kind::config, "trim: unknown fixed quantity '" + name + "'");

    std::vector<std::string> free;
    if (model == TrimModel::full) {
        for (const auto& name : kTrimQuantities)
            if (!problem.fixed.count(name)) free.push_back(name);
    } else {
        for (const auto& name : {"V", "gamma", "chi_dot", "alpha", "beta", "mu"})
            if (!problem.fixed.count(name)) free.push_back(name);
        if (free.size() != 3)
            throw Error(Error::Kind::config,
                        "trim (simplified): expected 3 free quantities among V, gamma, chi_dot, "
                        "alpha, beta, mu; got " +
                            std::to_string(free.size()));
    }

    // baseline point: fixed values, guesses, defaults
    FlightPoint base;
    double chi_dot0 = 0.0;
    base.eta = problem.eta;
    base.V = std::sqrt(2.0 * pr.m * pr.g / (pr.rho * pr.S * 0.5)); // C_L ~ 0.5 guess
    if (model == TrimModel::simplified) {
        base.p = h[0];
        base.q = h[1];
        base.r = h[2];
        base.delta_l = h[3];
        base.delta_m = h[4];
        base.delta_n = h[5];
    }
    for (const auto& [name, v] : problem.guesses) set_quantity(base, chi_dot0, name, v);
    for (const auto& [name, v] : problem.fixed) set_quantity(base, chi_dot0, name, v);

    auto residual = [&](const Eigen::VectorXd& x) {
        FlightPoint pt = base;
        double chi_dot = chi_dot0;
        for (size_t i = 0; i < free.size(); ++i)
            set_quantity(pt, chi_dot, free[i], x[static_cast<Eigen::Index>(i)]);

        Eigen::VectorXd r(static_cast<Eigen::Index>(free.size()));
        if (model == TrimModel::full) {
            auto d = dynamics_full(pt, pr);
            r[0] = d[3];            // V'
            r[1] = d[4];            // gamma'
            r[2] = d[5] - chi_dot;  // chi' equals the prescribed rate
            r[3] = d[6];            // alpha'
            r[4] = d[7];            // beta'
            r[5] = d[8];            // mu'
            r[6] = d[9];            // p'
            r[7] = d[10];           // q'
            r[8] = d[11];           // r'
        } else {
            auto d = dynamics_simplified(pt, pr, h);
            r[0] = d[3];
            r[1] = d[4];
            r[2] = d[5] - chi_dot;
        }
        return r;
    };

    Eigen::VectorXd x0(static_cast<Eigen::Index>(free.size()));
    for (size_t i = 0; i < free.size(); ++i)
        x0[static_cast<Eigen::Index>(i)] = quantity(base, chi_dot0, free[i]);

    NewtonResult res = newton_point(residual, x0, options);
    if (!res.converged)
        throw Error(Error::Kind::non_convergence,
                    "trim infeasible: residual " + std::to_string(res.residual_norm) + " after " +
                        std::to_string(res.iterations) + " iterations");

    FlightPoint out = base;
    double chi_dot = chi_dot0;
    for (size_t i = 0; i < free.size(); ++i)
        set_quantity(out, chi_dot, free[i], res.x[static_cast<Eigen::Index>(i)]);
    return out;
}

std::vector<SeriesVector> generalized_flat_parametrization(
    double t0, const FlatOutputTrajectory& traj, const FlatOutputChoice& choice,
    const IterationPlan& plan, const SeriesVector& v, const ControlMode& mode,
    const AircraftParams& pr, const PlanOptions& opt, std::vector<Stage2Warm>* warms) {
    plan.validate();

    std::vector<Stage2Warm> local;
    if (!warms) {
        local.resize(static_cast<size_t>(plan.J) + 1);
        warms = &local;
    }
    if (warms->size() != static_cast<size_t>(plan.J) + 1)
        throw Error(Error::Kind::config, "generalized parametrization: warm array size mismatch");

    std::vector<SeriesVector> iterates;
    iterates.reserve(static_cast<size_t>(plan.J) + 1);

    for (int j = 0; j <= plan.J; ++j) {
        const SeriesVector& h = (j == 0) ? v : iterates.back();
        try {
            iterates.push_back(flat_parametrization(t0, plan.kappa(j), traj, choice, h, mode,
                                                    (*warms)[static_cast<size_t>(j)], pr, opt));
        } catch (const Error& e) {
            throw Error(e.kind(),
                        "iteration j=" + std::to_string(j) + ": " + std::string(e.what()));
        }
    }
    return iterates;
}

} // namespace flatflight

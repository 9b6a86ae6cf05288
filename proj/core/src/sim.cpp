#include "flatflight/sim.hpp"

#include <cmath>
#include <iostream>

namespace flatflight {

namespace {

const std::array<const char*, 17> kPlanQuantities = {
    "x", "y", "z", "V", "gamma", "chi", "alpha", "beta", "mu", "p", "q", "r",
    "F", "eta", "delta_l", "delta_m", "delta_n"};

void check_finite(const std::array<double, 12>& s, double t) {
    for (double v : s)
        if (!std::isfinite(v))
            throw Error(Error::Kind::divergence,
                        "simulation diverged (non-finite state) near t=" + std::to_string(t));
}

void check_sane(const std::array<double, 12>& s, double t) {
    if (s[3] < 0.05 || s[3] > 1e4 || std::abs(s[4]) > 1.55 || std::abs(s[7]) > 1.5)
        throw Error(Error::Kind::divergence,
                    "simulation diverged (state outside sanity bounds) near t=" +
                        std::to_string(t));
}

} // namespace

const TaylorSeries& TrajectoryPlan::at(const std::string& quantity, size_t i, int j) const {
    auto it = table.find(quantity);
    if (it == table.end())
        throw Error(Error::Kind::config, "plan table: unknown quantity '" + quantity + "'");
    if (i >= it->second.size() || j < 0 || static_cast<size_t>(j) >= it->second[i].size())
        throw Error(Error::Kind::config, "plan table: no entry (" + quantity + ", " +
                                             std::to_string(i) + ", " + std::to_string(j) + ")");
    return it->second[i][static_cast<size_t>(j)];
}

FlightPoint TrajectoryPlan::point_at(size_t i, int j) const {
    SeriesVector sv;
    sv.base_time = times[i];
    for (const char* q : kPlanQuantities) sv.set(q, at(q, i, j));
    return point_from_series(sv);
}

TrajectoryPlan motion_planning(double t_begin, double t_end, int n_steps,
                               const FlatOutputTrajectory& traj, const FlatOutputChoice& choice,
                               const IterationPlan& plan, const ControlMode& mode,
                               const AircraftParams& pr, const PlanOptions& opt, bool verbose) {
    if (n_steps < 1)
        throw Error(Error::Kind::config, "motion planning needs at least one time interval");
    if (!(t_end > t_begin))
        throw Error(Error::Kind::config, "motion planning needs t_end > t_begin");
    plan.validate();

    TrajectoryPlan out;
    out.choice = choice;
    out.iterations = plan;
    out.mode = mode;
    const double dt = (t_end - t_begin) / n_steps;
    out.times.resize(static_cast<size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) out.times[static_cast<size_t>(i)] = t_begin + dt * i;

    const size_t npts = out.times.size();
    for (const char* q : kPlanQuantities)
        out.table[q].assign(npts, std::vector<TaylorSeries>());

    for (int j = 0; j <= plan.J; ++j) {
        Stage2Warm warm; // fresh per pass; chained across steps inside it
        for (size_t i = 0; i < npts; ++i) {
            SeriesVector h;
            if (j > 0) {
                h.base_time = out.times[i];
                for (const char* q : {"p", "q", "r", "delta_l", "delta_m", "delta_n"})
                    h.set(q, out.table.at(q)[i][static_cast<size_t>(j) - 1]);
            }
            SeriesVector step;
            try {
                step = flat_parametrization(out.times[i], plan.kappa(j), traj, choice, h, mode,
                                            warm, pr, opt);
            } catch (const Error& e) {
                throw Error(e.kind(), "planning step i=" + std::to_string(i) +
                                          " iterate j=" + std::to_string(j) + ": " + e.what());
            }
            for (const char* q : kPlanQuantities) out.table.at(q)[i].push_back(step.at(q));
            if (verbose)
                std::cerr << "plan: j=" << j << " i=" << i << " t=" << out.times[i] << "\n";
        }
    }
    return out;
}

double blend_eval(const TrajectoryPlan& plan, const std::string& quantity, int j, double t) {
    if (plan.times.size() < 2)
        throw Error(Error::Kind::config, "blend_eval needs a plan with at least two grid times");
    const double t0 = plan.times.front(), tn = plan.times.back();
    const double slack = 1e-9 * (1.0 + std::abs(tn - t0));
    if (t < t0 - slack || t > tn + slack)
        throw Error(Error::Kind::horizon,
                    "blend_eval: t=" + std::to_string(t) + " outside [" + std::to_string(t0) +
                        ", " + std::to_string(tn) + "]");
    t = std::min(std::max(t, t0), tn);

    size_t i = static_cast<size_t>((t - t0) / plan.dt());
    if (i + 2 > plan.times.size()) i = plan.times.size() - 2;

    const double ti = plan.times[i], tip = plan.times[i + 1];
    const TaylorSeries& si = plan.at(quantity, i, j);
    const TaylorSeries& sip = plan.at(quantity, i + 1, j);
    return ((tip - t) * si.eval(t - ti) + (t - ti) * sip.eval(t - tip)) / (tip - ti);
}

SimulationResult simulate(const TrajectoryPlan& plan, const AircraftParams& pr, SimMode mode,
                          const FeedbackLaw* law, const SimulateConfig& config) {
    if (mode == SimMode::feedback && !law)
        throw Error(Error::Kind::config, "feedback simulation needs a feedback law");
    if (config.substeps < 1)
        throw Error(Error::Kind::config, "simulation needs at least one sub-step");
    const int j = config.j < 0 ? plan.iterations.J : config.j;
    if (j > plan.iterations.J)
        throw Error(Error::Kind::config, "simulation iterate out of range");

    SimulationResult out;
    out.j = j;

    // initial state: plan at t0 plus the configured perturbation
    FlightPoint p0 = plan.point_at(0, j);
    std::array<double, 12> x = p0.state();
    {
        auto add = [&](const std::string& name, int idx) {
            auto it = config.perturbation.find(name);
            if (it != config.perturbation.end()) x[static_cast<size_t>(idx)] += it->second;
        };
        for (int k = 0; k < 12; ++k) add(state_names()[static_cast<size_t>(k)], k);
    }
    std::array<double, 4> I{0.0, 0.0, 0.0, 0.0};

    const double t_end = plan.times.back();
    const double hstep = plan.dt() / config.substeps;

    // applied controls at (t, state, integrals)
    auto controls_at = [&](double t, const std::array<double, 12>& xs,
                           const std::array<double, 4>& Is) {
        std::array<double, 5> u;
        u[0] = blend_eval(plan, "F", j, t);
        u[1] = blend_eval(plan, "eta", j, t);
        u[2] = blend_eval(plan, "delta_l", j, t);
        u[3] = blend_eval(plan, "delta_m", j, t);
        u[4] = blend_eval(plan, "delta_n", j, t);
        if (mode == SimMode::feedback) {
            ErrorState err;
            err.I = Is;
            for (int k = 0; k < 12; ++k)
                err.delta[static_cast<size_t>(k)] =
                    xs[static_cast<size_t>(k)] -
                    blend_eval(plan, state_names()[static_cast<size_t>(k)], j, t);
            Eigen::Vector4d du = feedback_eval(*law, err, t);
            u[0] += du(0);
            u[2] += du(1);
            u[3] += du(2);
            if (law->u4 == ControlMode::FourthControl::delta_n)
                u[4] += du(3);
            else
                u[1] += du(3);
        }
        return u;
    };

    // augmented derivative: 12 states + 4 integrals
    auto deriv = [&](double t, const std::array<double, 12>& xs,
                     const std::array<double, 4>& Is, std::array<double, 12>& dx,
                     std::array<double, 4>& dI) {
        auto u = controls_at(t, xs, Is);
        FlightPoint pt;
        pt.x = xs[0]; pt.y = xs[1]; pt.z = xs[2]; pt.V = xs[3]; pt.gamma = xs[4];
        pt.chi = xs[5]; pt.alpha = xs[6]; pt.beta = xs[7]; pt.mu = xs[8];
        pt.p = xs[9]; pt.q = xs[10]; pt.r = xs[11];
        pt.F = u[0]; pt.eta = u[1]; pt.delta_l = u[2]; pt.delta_m = u[3]; pt.delta_n = u[4];
        dx = dynamics_full(pt, pr);

        // integral states: planned-frame position errors, altitude, zeta
        double chi_plan = blend_eval(plan, "chi", j, t);
        double ex = xs[0] - blend_eval(plan, "x", j, t);
        double ey = xs[1] - blend_eval(plan, "y", j, t);
        double ez = xs[2] - blend_eval(plan, "z", j, t);
        dI[0] = std::cos(chi_plan) * ex + std::sin(chi_plan) * ey;
        dI[1] = -std::sin(chi_plan) * ex + std::cos(chi_plan) * ey;
        dI[2] = ez;
        switch (plan.choice.kind) {
        case FlatOutputChoice::Kind::beta:
            dI[3] = xs[7] - blend_eval(plan, "beta", j, t);
            break;
        case FlatOutputChoice::Kind::mu:
            dI[3] = xs[8] - blend_eval(plan, "mu", j, t);
            break;
        default:
            dI[3] = 0.0;
            break;
        }
    };

    auto record = [&](double t) {
        out.t.push_back(t);
        out.state.push_back(x);
        out.integrals.push_back(I);
        out.controls.push_back(controls_at(t, x, I));
    };

    double t = plan.times.front();
    record(t);
    int whole_seconds = static_cast<int>(std::floor(t));

    std::array<double, 12> k1x, k2x, k3x, k4x, xt;
    std::array<double, 4> k1i, k2i, k3i, k4i, it4;

    const long total = static_cast<long>(plan.times.size() - 1) * config.substeps;
    for (long step = 0; step < total; ++step) {
        const double h = std::min(hstep, t_end - t);
        deriv(t, x, I, k1x, k1i);
        for (int k = 0; k < 12; ++k) xt[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] + 0.5 * h * k1x[static_cast<size_t>(k)];
        for (int k = 0; k < 4; ++k) it4[static_cast<size_t>(k)] = I[static_cast<size_t>(k)] + 0.5 * h * k1i[static_cast<size_t>(k)];
        deriv(t + 0.5 * h, xt, it4, k2x, k2i);
        for (int k = 0; k < 12; ++k) xt[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] + 0.5 * h * k2x[static_cast<size_t>(k)];
        for (int k = 0; k < 4; ++k) it4[static_cast<size_t>(k)] = I[static_cast<size_t>(k)] + 0.5 * h * k2i[static_cast<size_t>(k)];
        deriv(t + 0.5 * h, xt, it4, k3x, k3i);
        for (int k = 0; k < 12; ++k) xt[static_cast<size_t>(k)] = x[static_cast<size_t>(k)] + h * k3x[static_cast<size_t>(k)];
        for (int k = 0; k < 4; ++k) it4[static_cast<size_t>(k)] = I[static_cast<size_t>(k)] + h * k3i[static_cast<size_t>(k)];
        deriv(t + h, xt, it4, k4x, k4i);

        for (int k = 0; k < 12; ++k)
            x[static_cast<size_t>(k)] += h / 6.0 *
                (k1x[static_cast<size_t>(k)] + 2.0 * k2x[static_cast<size_t>(k)] +
                 2.0 * k3x[static_cast<size_t>(k)] + k4x[static_cast<size_t>(k)]);
        for (int k = 0; k < 4; ++k)
            I[static_cast<size_t>(k)] += h / 6.0 *
                (k1i[static_cast<size_t>(k)] + 2.0 * k2i[static_cast<size_t>(k)] +
                 2.0 * k3i[static_cast<size_t>(k)] + k4i[static_cast<size_t>(k)]);
        t += h;

        check_finite(x, t);
        check_sane(x, t);
        record(t);

        if (config.verbose && static_cast<int>(std::floor(t)) != whole_seconds) {
            whole_seconds = static_cast<int>(std::floor(t));
            std::cerr << "sim: t=" << whole_seconds << "\n";
        }
    }
    return out;
}

std::map<std::string, QuantityError> tracking_metrics(const SimulationResult& result,
                                                      const TrajectoryPlan& plan, int j,
                                                      double window_seconds) {
    if (result.t.empty())
        throw Error(Error::Kind::config, "tracking metrics on an empty result");
    const double t_end = result.t.back();
    double t_from = t_end - window_seconds;
    if (t_from < plan.times.front()) t_from = plan.times.front();

    std::map<std::string, QuantityError> out;
    for (const char* q : kPlanQuantities) {
        QuantityError e;
        size_t n = 0;
        for (size_t k = 0; k < result.t.size(); ++k) {
            if (result.t[k] < t_from) continue;
            double planned = blend_eval(plan, q, j, result.t[k]);
            double got;
            if (std::string(q) == "F") got = result.controls[k][0];
            else if (std::string(q) == "eta") got = result.controls[k][1];
            else if (std::string(q) == "delta_l") got = result.controls[k][2];
            else if (std::string(q) == "delta_m") got = result.controls[k][3];
            else if (std::string(q) == "delta_n") got = result.controls[k][4];
            else {
                int idx = -1;
                for (int m = 0; m < 12; ++m)
                    if (std::string(state_names()[static_cast<size_t>(m)]) == q) idx = m;
                got = result.state[k][static_cast<size_t>(idx)];
            }
            double err = std::abs(got - planned);
            e.max_abs = std::max(e.max_abs, err);
            e.rms += err * err;
            ++n;
        }
        if (n > 0) e.rms = std::sqrt(e.rms / static_cast<double>(n));
        out[q] = e;
    }
    return out;
}

EquationResiduals plan_step_residuals(const SeriesVector& step, const SeriesVector& h,
                                      const AircraftParams& pr) {
    std::array<TaylorSeries, 12> s;
    for (int k = 0; k < 12; ++k) s[static_cast<size_t>(k)] = step.at(state_names()[static_cast<size_t>(k)]);
    ControlsT<TaylorSeries> u{step.at("F"), step.at("eta"), step.at("delta_l"),
                              step.at("delta_m"), step.at("delta_n")};

    auto hser = [&](const char* name, const TaylorSeries& fallback) {
        if (h.contains(name)) return h.at(name);
        return TaylorSeries(fallback.order()); // zero of matching order
    };
    HEstimate<TaylorSeries> he{hser("p", s[9]),          hser("q", s[10]),
                               hser("r", s[11]),         hser("delta_l", u.delta_l),
                               hser("delta_m", u.delta_m), hser("delta_n", u.delta_n)};

    auto dsim = model::dynamics_simplified(pr, s, u, he);
    auto dful = model::dynamics_full(pr, s, u);

    EquationResiduals out;
    auto put = [&](const char* name, const TaylorSeries& lhs_state, const TaylorSeries& rhs) {
        TaylorSeries ld = lhs_state.derivative();
        int n = std::min(ld.order(), rhs.order());
        TaylorSeries res = ld.truncated(n) - rhs.truncated(n);
        double scale = 1.0;
        for (int k = 0; k <= n; ++k)
            scale = std::max(scale, std::max(std::abs(ld[k]), std::abs(rhs[k])));
        out.residual[name] = res;
        out.scale[name] = scale;
    };

    put("x", s[0], dsim.x);
    put("y", s[1], dsim.y);
    put("z", s[2], dsim.z);
    put("V", s[3], dsim.V);
    put("gamma", s[4], dsim.gamma);
    put("chi", s[5], dsim.chi);
    put("alpha", s[6], dsim.alpha);
    put("beta", s[7], dsim.beta);
    put("mu", s[8], dsim.mu);
    put("p", s[9], dful.p);
    put("q", s[10], dful.q);
    put("r", s[11], dful.r);
    return out;
}

SeriesVector h_estimate_for(const TrajectoryPlan& plan, size_t i, int j) {
    SeriesVector h;
    h.base_time = plan.times[i];
    if (j > 0) {
        for (const char* q : {"p", "q", "r", "delta_l", "delta_m", "delta_n"})
            h.set(q, plan.at(q, i, j - 1));
    } else if (plan.mode.u4 == ControlMode::FourthControl::eta) {
        int kappa = plan.iterations.kappa(0);
        h.set("delta_n", plan.mode.known.series(plan.times[i], kappa - 2));
    }
    return h;
}

double full_residual_rms(const TrajectoryPlan& plan, size_t i, int j, const AircraftParams& pr) {
    FlightPoint pt = plan.point_at(i, j);
    auto d = dynamics_full(pt, pr);

    double acc = 0.0;
    for (int k = 0; k < 12; ++k) {
        const TaylorSeries& s = plan.at(state_names()[static_cast<size_t>(k)], i, j);
        double planned_rate = s.order() >= 1 ? s[1] : 0.0;
        double rel = (d[static_cast<size_t>(k)] - planned_rate) / (1.0 + std::abs(planned_rate));
        acc += rel * rel;
    }
    return std::sqrt(acc / 12.0);
}

} // namespace flatflight

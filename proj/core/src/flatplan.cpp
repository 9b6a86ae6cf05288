#include "flatflight/flatplan.hpp"

#include <cmath>

namespace flatflight {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Jet-based Newton for the stage-2 constant terms: residual evaluated on
// order-0 series, Jacobian exact through dual scalars.
template <class F>
Eigen::VectorXd newton_constants(F&& residual, Eigen::VectorXd x, double tol, int max_iter,
                                 const std::string& what) {
    const size_t n = static_cast<size_t>(x.size());
    double norm = 0.0;
    for (int it = 0; it <= max_iter; ++it) {
        std::vector<TaylorSeries> xs;
        xs.reserve(n);
        for (size_t i = 0; i < n; ++i)
            xs.push_back(TaylorSeries::constant(x[static_cast<Eigen::Index>(i)], 0));

        std::vector<TaylorSeries> r;
        std::vector<std::vector<TaylorSeries>> jcols;
        detail::eval_series_residual_and_jacobian(residual, xs, 0, r, jcols);

        Eigen::VectorXd rv(static_cast<Eigen::Index>(r.size()));
        for (size_t i = 0; i < r.size(); ++i) rv[static_cast<Eigen::Index>(i)] = r[i].value();
        norm = rv.lpNorm<Eigen::Infinity>();
        if (norm <= tol) return x;

        Eigen::MatrixXd J(rv.size(), static_cast<Eigen::Index>(n));
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < r.size(); ++i)
                J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    jcols[j][i].value();

        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible())
            throw Error(Error::Kind::singularity, what + ": singular Jacobian in constant solve");
        x -= lu.solve(rv);
    }
    throw Error(Error::Kind::non_convergence,
                what + ": no convergence, residual " + std::to_string(norm));
}

struct PointForces {
    const AircraftParams* pr;
    const FlightPoint* pt;

    WindForcesT<double> operator()(double alpha, double beta, double mu, double F) const {
        ControlsT<double> u{F, pt->eta, pt->delta_l, pt->delta_m, pt->delta_n};
        return model::forces_moments(*pr, pt->V, pt->gamma, mu, alpha, beta, pt->p, pt->q, pt->r,
                                     u);
    }
};

} // namespace

Stage1Result stage1_invert(const TaylorSeries& xs, const TaylorSeries& ys,
                           const TaylorSeries& zs) {
    TaylorSeries xd = xs.derivative();
    TaylorSeries yd = ys.derivative();
    TaylorSeries zd = zs.derivative();

    TaylorSeries V2 = xd * xd + yd * yd + zd * zd;
    if (!(value_of(V2) > 0.0))
        throw Error(Error::Kind::chart_violation, "stage 1: zero velocity at base point");
    double horiz = value_of(xd) * value_of(xd) + value_of(yd) * value_of(yd);
    if (horiz <= 1e-12 * value_of(V2))
        throw Error(Error::Kind::chart_violation,
                    "stage 1: V cos(gamma) vanishes (vertical path)");

    Stage1Result out;
    out.V = sqrt(V2);
    out.gamma = -asin(zd / out.V);
    out.chi = atan2(yd, xd);
    return out;
}

Stage2Result stage2_solve(const AircraftParams& pr, const Stage2Inputs& in,
                          const FlatOutputChoice& choice, Stage2Warm& warm,
                          const PlanOptions& opt) {
    const int w = std::min(in.V.order(), std::min(in.gamma.order(), in.chi.order())) - 1;
    if (w < 0)
        throw Error(Error::Kind::config, "stage 2: input series order too low");

    const TaylorSeries Vs = in.V.truncated(w);
    const TaylorSeries gammas = in.gamma.truncated(w);
    const TaylorSeries Vdot = in.V.derivative().truncated(w);
    const TaylorSeries gammadot = in.gamma.derivative().truncated(w);
    const TaylorSeries chidot = in.chi.derivative().truncated(w);
    const TaylorSeries zeta = in.zeta.truncated(w);
    const HEstimate<TaylorSeries> h{in.h.p.truncated(w),       in.h.q.truncated(w),
                                    in.h.r.truncated(w),       in.h.delta_l.truncated(w),
                                    in.h.delta_m.truncated(w), in.h.delta_n.truncated(w)};
    TaylorSeries f1 = TaylorSeries::constant(0.0, w);
    TaylorSeries f2 = TaylorSeries::constant(0.0, w);
    if (choice.kind == FlatOutputChoice::Kind::combo) {
        f1 = in.f1.truncated(w);
        f2 = in.f2.truncated(w);
        if (std::abs(value_of(f1)) + std::abs(value_of(f2)) < 1e-12)
            throw Error(Error::Kind::singularity, "stage 2: combo weights both vanish");
    }

    const double force_scale = pr.m * pr.g;

    // unknowns: (alpha, beta, mu, F)
    auto residual = [&](const auto& u) {
        using Series = std::decay_t<decltype(u[0])>;
        using S = typename Series::scalar_type;

        const Series& alpha = u[0];
        const Series& beta = u[1];
        const Series& mu = u[2];
        const Series& F = u[3];

        const int ord = alpha.order();
        auto lift = [&](const TaylorSeries& a) {
            return lift_series<S>(a.truncated(std::min(ord, a.order())));
        };

        Series V = lift(Vs);
        Series gamma = lift(gammas);

        ControlsT<Series> uc{F, Series(ord), lift(h.delta_l), lift(h.delta_m), lift(h.delta_n)};
        WindForcesT<Series> f = model::forces_moments(pr, V, gamma, mu, alpha, beta, lift(h.p),
                                                      lift(h.q), lift(h.r), uc);

        Series smu = sin(mu), cmu = cos(mu);
        Series cg = cos(gamma);
        Series mV = pr.m * V;

        std::vector<Series> r;
        r.reserve(4);
        r.push_back(pr.m * lift(Vdot) - f.X);
        r.push_back(mV * lift(gammadot) + (f.Y * smu + f.Z * cmu));
        r.push_back(mV * cg * lift(chidot) - (f.Y * cmu - f.Z * smu));

        Series zet = lift(zeta);
        switch (choice.kind) {
        case FlatOutputChoice::Kind::beta:
            r.push_back((beta - zet) * force_scale);
            break;
        case FlatOutputChoice::Kind::mu:
            r.push_back((mu - zet) * force_scale);
            break;
        case FlatOutputChoice::Kind::thrust:
            r.push_back(F - zet);
            break;
        case FlatOutputChoice::Kind::combo:
            r.push_back((lift(f1) * beta + lift(f2) * mu - zet) * force_scale);
            break;
        }
        return r;
    };

    Eigen::VectorXd x0(4);
    if (warm.valid) {
        x0 << warm.alpha, warm.beta, warm.mu, warm.F;
    } else {
        x0 << 0.0, 0.0, 0.0, 0.0;
    }
    // keep the pinned quantity consistent with its target from the start
    switch (choice.kind) {
    case FlatOutputChoice::Kind::beta:
        x0[1] = value_of(zeta);
        break;
    case FlatOutputChoice::Kind::mu:
        x0[2] = value_of(zeta);
        break;
    case FlatOutputChoice::Kind::thrust:
        x0[3] = value_of(zeta);
        break;
    case FlatOutputChoice::Kind::combo:
        break;
    }

    Eigen::VectorXd c = newton_constants(residual, x0, opt.newton_tol * force_scale,
                                         opt.newton_max_iter, "stage 2");

    // singularity check at the Newton iterate
    {
        FlightPoint pt;
        pt.V = value_of(Vs);
        pt.gamma = value_of(gammas);
        pt.alpha = c[0];
        pt.beta = c[1];
        pt.mu = c[2];
        pt.F = c[3];
        pt.p = value_of(h.p);
        pt.q = value_of(h.q);
        pt.r = value_of(h.r);
        pt.delta_l = value_of(h.delta_l);
        pt.delta_m = value_of(h.delta_m);
        pt.delta_n = value_of(h.delta_n);
        SingularityReport rep = singularity_check(pt, choice, pr);
        if (std::abs(rep.det) < opt.singularity_threshold * rep.scale)
            throw Error(Error::Kind::singularity,
                        "stage 2: " + rep.condition + " determinant " + std::to_string(rep.det) +
                            " below threshold (scale " + std::to_string(rep.scale) + ")");
    }

    std::vector<TaylorSeries> x;
    for (int i = 0; i < 4; ++i) x.push_back(TaylorSeries::constant(c[i], 0));
    x = newton_series(residual, x, w);

    return {x[0], x[1], x[2], x[3]};
}

Stage3Result stage3_solve(const TaylorSeries& alpha, const TaylorSeries& beta,
                          const TaylorSeries& mu, const TaylorSeries& gamma,
                          const TaylorSeries& gammadot, const TaylorSeries& chidot) {
    if (std::abs(std::cos(value_of(beta))) < 1e-12)
        throw Error(Error::Kind::chart_violation, "stage 3: cos(beta) vanishes");

    TaylorSeries ad = alpha.derivative();
    TaylorSeries bd = beta.derivative();
    TaylorSeries md = mu.derivative();

    TaylorSeries sa = sin(alpha), ca = cos(alpha);
    TaylorSeries sb = sin(beta), cb = cos(beta);
    TaylorSeries sg = sin(gamma);

    TaylorSeries W2, W3;
    model::wind_rotation_rates(gamma, mu, gammadot, chidot, W2, W3);

    TaylorSeries muhat = md - chidot * sg;

    Stage3Result out;
    out.p = sa * bd + ca * cb * muhat - ca * sb * W2 - sa * W3;
    out.q = ad + sb * muhat + cb * W2;
    out.r = -(ca * bd) + sa * cb * muhat - sa * sb * W2 + ca * W3;
    return out;
}

Stage4Result stage4_solve(const AircraftParams& pr, const TaylorSeries& V,
                          const TaylorSeries& alpha, const TaylorSeries& beta,
                          const TaylorSeries& p, const TaylorSeries& q, const TaylorSeries& r,
                          const TaylorSeries& F, ControlMode::FourthControl u4,
                          const TaylorSeries& known) {
    TaylorSeries pd = p.derivative();
    TaylorSeries qd = q.derivative();
    TaylorSeries rd = r.derivative();
    const int u = std::min(pd.order(), std::min(qd.order(), rd.order()));

    const Inertia& I = pr.inertia;
    TaylorSeries pu = p.truncated(u), qu = q.truncated(u), ru = r.truncated(u);
    TaylorSeries L_req = I.Ixx * pd - I.Ixz * rd - ((I.Iyy - I.Izz) * qu * ru + I.Ixz * pu * qu);
    TaylorSeries M_req = I.Iyy * qd - ((I.Izz - I.Ixx) * pu * ru + I.Ixz * (ru * ru - pu * pu));
    TaylorSeries N_req =
        -(I.Ixz * pd) + I.Izz * rd - ((I.Ixx - I.Iyy) * pu * qu - I.Ixz * ru * qu);

    TaylorSeries Vu = V.truncated(u);
    TaylorSeries qbarS = (0.5 * pr.rho * pr.S) * Vu * Vu;
    TaylorSeries al = alpha.truncated(u), be = beta.truncated(u);
    TaylorSeries Fu = F.truncated(u);

    // The torque channels are linear in the deflections, so the coefficient
    // series are exact differences of two channel evaluations.
    auto torque_channels = [&](double dl, double dm, double dn) {
        TaylorSeries dls = TaylorSeries::constant(dl, u);
        TaylorSeries dms = TaylorSeries::constant(dm, u);
        TaylorSeries dns = TaylorSeries::constant(dn, u);
        AeroCoeffs<TaylorSeries> C = model::gna_eval(pr.gna, al, be, pu, qu, ru, dls, dms, dns, pr);
        return std::array<TaylorSeries, 3>{C.Cl, C.Cm, C.Cn};
    };

    auto base = torque_channels(0.0, 0.0, 0.0);
    auto col_l = torque_channels(1.0, 0.0, 0.0);
    auto col_m = torque_channels(0.0, 1.0, 0.0);
    auto col_n = torque_channels(0.0, 0.0, 1.0);
    for (size_t i = 0; i < 3; ++i) {
        col_l[i] = col_l[i] - base[i];
        col_m[i] = col_m[i] - base[i];
        col_n[i] = col_n[i] - base[i];
    }

    const double row_len[3] = {pr.a, pr.b, pr.a};
    TaylorSeries rhs[3] = {L_req, M_req, N_req};
    for (size_t i = 0; i < 3; ++i) rhs[i] = rhs[i] - qbarS * row_len[i] * base[i];

    TaylorSeries kn = known.truncated(std::min(u, known.order()));
    kn = kn.extended(u);
    std::vector<std::vector<TaylorSeries>> A(3);
    Stage4Result out;

    if (u4 == ControlMode::FourthControl::delta_n) {
        // eta known: solve (delta_l, delta_m, delta_n)
        TaylorSeries etaF = kn * Fu;
        rhs[0] = rhs[0] + (pr.y_p * std::sin(pr.eps)) * etaF;
        rhs[2] = rhs[2] - (pr.y_p * std::cos(pr.eps)) * etaF;
        for (size_t i = 0; i < 3; ++i)
            A[i] = {qbarS * row_len[i] * col_l[i], qbarS * row_len[i] * col_m[i],
                    qbarS * row_len[i] * col_n[i]};
        std::vector<TaylorSeries> sol;
        try {
            sol = solve_series_linear(A, {rhs[0], rhs[1], rhs[2]});
        } catch (const Error& e) {
            throw Error(Error::Kind::singularity,
                        std::string("stage 4: control effectiveness matrix singular (") +
                            e.what() + ")");
        }
        out.delta_l = sol[0];
        out.delta_m = sol[1];
        out.delta_n = sol[2];
        out.eta = kn;
    } else {
        // delta_n known: solve (delta_l, delta_m, eta)
        for (size_t i = 0; i < 3; ++i) rhs[i] = rhs[i] - qbarS * row_len[i] * col_n[i] * kn;
        TaylorSeries eta_col_L = (-pr.y_p * std::sin(pr.eps)) * Fu;
        TaylorSeries eta_col_M = TaylorSeries::constant(0.0, u);
        TaylorSeries eta_col_N = (pr.y_p * std::cos(pr.eps)) * Fu;
        A[0] = {qbarS * row_len[0] * col_l[0], qbarS * row_len[0] * col_m[0], eta_col_L};
        A[1] = {qbarS * row_len[1] * col_l[1], qbarS * row_len[1] * col_m[1], eta_col_M};
        A[2] = {qbarS * row_len[2] * col_l[2], qbarS * row_len[2] * col_m[2], eta_col_N};
        std::vector<TaylorSeries> sol;
        try {
            sol = solve_series_linear(A, {rhs[0], rhs[1], rhs[2]});
        } catch (const Error& e) {
            throw Error(Error::Kind::singularity,
                        std::string("stage 4: control effectiveness matrix singular (") +
                            e.what() + ")");
        }
        out.delta_l = sol[0];
        out.delta_m = sol[1];
        out.delta_n = kn;
        out.eta = sol[2];
    }
    return out;
}

SingularityReport singularity_check(const FlightPoint& pt, const FlatOutputChoice& choice,
                                    const AircraftParams& pr) {
    PointForces forces{&pr, &pt};

    const double qbarS = 0.5 * pr.rho * pr.S * pt.V * pt.V;
    const double X_t = forces(pt.alpha, pt.beta, pt.mu, pt.F).X;

    // thrust eliminated through the X equation (linear in F)
    auto F_of = [&](double al, double be, double mu) {
        double X0 = forces(al, be, mu, 0.0).X;
        return (X_t - X0) / (std::cos(al + pr.eps) * std::cos(be));
    };
    auto gamma_combo = [&](double al, double be, double mu, double F) {
        auto f = forces(al, be, mu, F);
        return f.Y * std::sin(mu) + f.Z * std::cos(mu);
    };
    auto chi_combo = [&](double al, double be, double mu, double F) {
        auto f = forces(al, be, mu, F);
        return f.Y * std::cos(mu) - f.Z * std::sin(mu);
    };

    const double step = 1e-6;
    SingularityReport rep;
    rep.scale = qbarS * qbarS;

    auto det2 = [&](auto&& ra, auto&& rb) {
        double a11 = (ra(step, 0.0) - ra(-step, 0.0)) / (2 * step);
        double a12 = (ra(0.0, step) - ra(0.0, -step)) / (2 * step);
        double a21 = (rb(step, 0.0) - rb(-step, 0.0)) / (2 * step);
        double a22 = (rb(0.0, step) - rb(0.0, -step)) / (2 * step);
        return a11 * a22 - a12 * a21;
    };

    switch (choice.kind) {
    case FlatOutputChoice::Kind::beta: {
        rep.condition = "beta_output";
        auto rg = [&](double da, double dm) {
            double al = pt.alpha + da, mu = pt.mu + dm;
            return gamma_combo(al, pt.beta, mu, F_of(al, pt.beta, mu));
        };
        auto rc = [&](double da, double dm) {
            double al = pt.alpha + da, mu = pt.mu + dm;
            return chi_combo(al, pt.beta, mu, F_of(al, pt.beta, mu));
        };
        rep.det = det2(rg, rc);
        break;
    }
    case FlatOutputChoice::Kind::mu: {
        rep.condition = "mu_output";
        auto rg = [&](double da, double db) {
            double al = pt.alpha + da, be = pt.beta + db;
            return gamma_combo(al, be, pt.mu, F_of(al, be, pt.mu));
        };
        auto rc = [&](double da, double db) {
            double al = pt.alpha + da, be = pt.beta + db;
            return chi_combo(al, be, pt.mu, F_of(al, be, pt.mu));
        };
        rep.det = det2(rg, rc);
        break;
    }
    case FlatOutputChoice::Kind::thrust: {
        rep.condition = "thrust_output";
        const double chi_t = chi_combo(pt.alpha, pt.beta, pt.mu, pt.F);
        // sideslip eliminated through the chi equation (dominantly linear in
        // beta through the side-force channel)
        auto beta_of = [&](double al, double mu) {
            double be = pt.beta;
            for (int it = 0; it < 8; ++it) {
                double g0 = chi_combo(al, be, mu, pt.F) - chi_t;
                if (std::abs(g0) < 1e-12 * std::max(qbarS, 1.0)) break;
                const double hb = 1e-7;
                double g1 = chi_combo(al, be + hb, mu, pt.F) - chi_t;
                double slope = (g1 - g0) / hb;
                if (std::abs(slope) < 1e-12 * std::max(qbarS, 1.0)) break;
                be -= g0 / slope;
            }
            return be;
        };
        auto rv = [&](double da, double dm) {
            double al = pt.alpha + da, mu = pt.mu + dm;
            return forces(al, beta_of(al, mu), mu, pt.F).X;
        };
        auto rg = [&](double da, double dm) {
            double al = pt.alpha + da, mu = pt.mu + dm;
            return gamma_combo(al, beta_of(al, mu), mu, pt.F);
        };
        rep.det = det2(rv, rg);
        break;
    }
    case FlatOutputChoice::Kind::combo: {
        rep.condition = "combo_output";
        // move along the constraint direction (f2, -f1) in (beta, mu)
        double f1v = choice.f1.eval(0.0);
        double f2v = choice.f2.eval(0.0);
        double nrm = std::hypot(f1v, f2v);
        if (nrm < 1e-12)
            throw Error(Error::Kind::singularity, "combo weights both vanish");
        double db = f2v / nrm, dm = -f1v / nrm;
        auto rg = [&](double da, double ds) {
            double al = pt.alpha + da, be = pt.beta + ds * db, mu = pt.mu + ds * dm;
            return gamma_combo(al, be, mu, F_of(al, be, mu));
        };
        auto rc = [&](double da, double ds) {
            double al = pt.alpha + da, be = pt.beta + ds * db, mu = pt.mu + ds * dm;
            return chi_combo(al, be, mu, F_of(al, be, mu));
        };
        rep.det = det2(rg, rc);
        break;
    }
    }
    return rep;
}

SeriesVector flat_parametrization(double t0, int kappa, const FlatOutputTrajectory& traj,
                                  const FlatOutputChoice& choice, const SeriesVector& h_estimate,
                                  const ControlMode& mode, Stage2Warm& warm,
                                  const AircraftParams& pr, const PlanOptions& opt) {
    if (kappa < 4 || kappa > TaylorSeries::kMaxOrder)
        throw Error(Error::Kind::config,
                    "flat parametrization needs 4 <= kappa <= 64, got " + std::to_string(kappa));

    auto staged = [&](const std::string& name, int order) {
        if (h_estimate.contains(name)) {
            const TaylorSeries& s = h_estimate.at(name);
            return s.truncated(std::min(order, s.order())).extended(order);
        }
        return TaylorSeries(order);
    };

    TaylorSeries xs = traj.x.series(t0, kappa);
    TaylorSeries ys = traj.y.series(t0, kappa);
    TaylorSeries zs = traj.z.series(t0, kappa);

    Stage1Result s1;
    try {
        s1 = stage1_invert(xs, ys, zs);
    } catch (const Error& e) {
        throw Error(e.kind(), "stage 1 at t0=" + std::to_string(t0) + ": " + e.what());
    }

    // heading continuity across steps: keep chi near the previous constant
    if (warm.chi_valid) {
        double k = std::round((warm.chi - s1.chi[0]) / kTwoPi);
        if (k != 0.0) s1.chi[0] += kTwoPi * k;
    }

    const int w = kappa - 2;
    Stage2Inputs in2;
    in2.V = s1.V;
    in2.gamma = s1.gamma;
    in2.chi = s1.chi;
    in2.zeta = traj.zeta.series(t0, kappa - 1);
    if (choice.kind == FlatOutputChoice::Kind::combo) {
        in2.f1 = choice.f1.series(t0, kappa - 1);
        in2.f2 = choice.f2.series(t0, kappa - 1);
    } else {
        in2.f1 = TaylorSeries(kappa - 1);
        in2.f2 = TaylorSeries(kappa - 1);
    }
    in2.h.p = staged("p", w);
    in2.h.q = staged("q", w);
    in2.h.r = staged("r", w);
    in2.h.delta_l = staged("delta_l", w);
    in2.h.delta_m = staged("delta_m", w);
    in2.h.delta_n = staged("delta_n", w);

    TaylorSeries known_full = mode.known.series(t0, w);
    if (mode.u4 == ControlMode::FourthControl::eta) {
        // a pinned rudder value participates in the force block exactly
        in2.h.delta_n = known_full;
    }

    Stage2Result s2;
    try {
        s2 = stage2_solve(pr, in2, choice, warm, opt);
    } catch (const Error& e) {
        throw Error(e.kind(), "stage 2 at t0=" + std::to_string(t0) + ": " + e.what());
    }
    warm.valid = true;
    warm.alpha = s2.alpha.value();
    warm.beta = s2.beta.value();
    warm.mu = s2.mu.value();
    warm.F = s2.F.value();
    warm.chi_valid = true;
    warm.chi = s1.chi.value();

    Stage3Result s3;
    try {
        s3 = stage3_solve(s2.alpha, s2.beta, s2.mu, s1.gamma.truncated(w),
                          s1.gamma.derivative().truncated(w), s1.chi.derivative().truncated(w));
    } catch (const Error& e) {
        throw Error(e.kind(), "stage 3 at t0=" + std::to_string(t0) + ": " + e.what());
    }

    Stage4Result s4;
    try {
        s4 = stage4_solve(pr, s1.V, s2.alpha, s2.beta, s3.p, s3.q, s3.r, s2.F, mode.u4,
                          known_full);
    } catch (const Error& e) {
        throw Error(e.kind(), "stage 4 at t0=" + std::to_string(t0) + ": " + e.what());
    }

    SeriesVector out;
    out.base_time = t0;
    out.set("x", xs);
    out.set("y", ys);
    out.set("z", zs);
    out.set("V", s1.V);
    out.set("gamma", s1.gamma);
    out.set("chi", s1.chi);
    out.set("alpha", s2.alpha);
    out.set("beta", s2.beta);
    out.set("mu", s2.mu);
    out.set("F", s2.F);
    out.set("p", s3.p);
    out.set("q", s3.q);
    out.set("r", s3.r);
    out.set("delta_l", s4.delta_l);
    out.set("delta_m", s4.delta_m);
    out.set("delta_n", s4.delta_n);
    out.set("eta", s4.eta);
    return out;
}

} // namespace flatflight

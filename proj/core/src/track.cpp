#include "flatflight/track.hpp"

#include <cmath>

namespace flatflight {

namespace {

// ascending coefficients a0..a_{n-1} of prod_k (s + lambda_k), monic
std::vector<double> poly_from_roots(const std::vector<double>& lambdas) {
    std::vector<double> c = {1.0};
    for (double l : lambdas) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i] * l;
            next[i + 1] += c[i];
        }
        c = std::move(next);
    }
    c.pop_back(); // drop the leading 1
    return c;
}

constexpr int kStateBase = 4; // states start after I1..I4 in the augmented vector

struct JetColumns {
    Eigen::MatrixXd A12; // 12 x 12
    Eigen::MatrixXd B12; // 12 x 4 over (F, delta_l, delta_m, u4)
};

JetColumns state_jacobians(const FlightPoint& pt, ControlMode::FourthControl u4,
                           const AircraftParams& pr, bool frozen) {
    JetColumns out;
    out.A12.setZero(12, 12);
    out.B12.setZero(12, 4);

    auto eval_column = [&](int seed_state, int seed_control) {
        std::array<Dual, 12> s;
        auto st = pt.state();
        for (int k = 0; k < 12; ++k)
            s[static_cast<size_t>(k)] = Dual(st[static_cast<size_t>(k)], k == seed_state ? 1.0 : 0.0);

        ControlsT<Dual> u{Dual(pt.F, seed_control == 0 ? 1.0 : 0.0),
                          Dual(pt.eta, seed_control == 4 ? 1.0 : 0.0),
                          Dual(pt.delta_l, seed_control == 1 ? 1.0 : 0.0),
                          Dual(pt.delta_m, seed_control == 2 ? 1.0 : 0.0),
                          Dual(pt.delta_n, seed_control == 3 ? 1.0 : 0.0)};

        Eigen::VectorXd col(12);
        if (frozen) {
            HEstimate<Dual> h{Dual(pt.p), Dual(pt.q), Dual(pt.r),
                              Dual(pt.delta_l), Dual(pt.delta_m), Dual(pt.delta_n)};
            auto ds = model::dynamics_simplified(pr, s, u, h);
            auto df = model::dynamics_full(pr, s, u);
            col << ds.x.d, ds.y.d, ds.z.d, ds.V.d, ds.gamma.d, ds.chi.d, ds.alpha.d, ds.beta.d,
                ds.mu.d, df.p.d, df.q.d, df.r.d;
        } else {
            auto d = model::dynamics_full(pr, s, u);
            col << d.x.d, d.y.d, d.z.d, d.V.d, d.gamma.d, d.chi.d, d.alpha.d, d.beta.d, d.mu.d,
                d.p.d, d.q.d, d.r.d;
        }
        return col;
    };

    for (int j = 0; j < 12; ++j) out.A12.col(j) = eval_column(j, -1);

    // control columns: F, delta_l, delta_m, u4
    out.B12.col(0) = eval_column(-1, 0);
    out.B12.col(1) = eval_column(-1, 1);
    out.B12.col(2) = eval_column(-1, 2);
    out.B12.col(3) = eval_column(-1, u4 == ControlMode::FourthControl::delta_n ? 3 : 4);
    return out;
}

LinearSystem assemble(const FlightPoint& pt, FlatOutputChoice::Kind zeta_kind,
                      ControlMode::FourthControl u4, const AircraftParams& pr, bool frozen) {
    JetColumns jc = state_jacobians(pt, u4, pr, frozen);

    LinearSystem sys;
    sys.A.setZero(kAugStates, kAugStates);
    sys.B.setZero(kAugStates, 4);

    const double c = std::cos(pt.chi), s = std::sin(pt.chi);
    sys.A(0, kStateBase + 0) = c;
    sys.A(0, kStateBase + 1) = s;
    sys.A(1, kStateBase + 0) = -s;
    sys.A(1, kStateBase + 1) = c;
    sys.A(2, kStateBase + 2) = 1.0;
    switch (zeta_kind) {
    case FlatOutputChoice::Kind::beta:
        sys.A(3, kStateBase + 7) = 1.0;
        break;
    case FlatOutputChoice::Kind::mu:
        sys.A(3, kStateBase + 8) = 1.0;
        break;
    case FlatOutputChoice::Kind::thrust:
        break; // I4 unused
    case FlatOutputChoice::Kind::combo:
        throw Error(Error::Kind::config, "feedback design for combo outputs is not supported");
    }

    sys.A.block(kStateBase, kStateBase, 12, 12) = jc.A12;
    sys.B.block(kStateBase, 0, 12, 4) = jc.B12;
    return sys;
}

void check_structural_zero(const Eigen::RowVectorXd& g, double scale, const char* what) {
    if (g.lpNorm<Eigen::Infinity>() > 1e-6 * scale)
        throw Error(Error::Kind::singularity,
                    std::string("feedback design: chain structure violated at ") + what);
}

} // namespace

void PoleConfig::validate(FlatOutputChoice::Kind kind) const {
    auto positive = [](const std::vector<double>& v) {
        for (double x : v)
            if (!(x > 0.0)) return false;
        return true;
    };
    if (!positive(lambda1) || !positive(lambda2) || !positive(lambda3) || !positive(lambda4))
        throw Error(Error::Kind::config, "pole configuration: all decay rates must be positive");

    if (kind == FlatOutputChoice::Kind::thrust) {
        if (lambda1.size() != 5 || lambda2.size() != 5 || lambda3.size() != 5 ||
            !lambda4.empty())
            throw Error(Error::Kind::config,
                        "pole configuration for the thrust output needs lists (5,5,5) and no "
                        "fourth chain");
    } else {
        if (lambda1.size() != 3 || lambda2.size() != 5 || lambda3.size() != 5 ||
            lambda4.size() != 3)
            throw Error(Error::Kind::config,
                        "pole configuration needs list lengths (3,5,5,3)");
    }
}

FlightPoint point_from_series(const SeriesVector& sv) {
    FlightPoint pt;
    auto get = [&](const char* name) { return sv.contains(name) ? value_of(sv.at(name)) : 0.0; };
    pt.x = get("x");
    pt.y = get("y");
    pt.z = get("z");
    pt.V = get("V");
    pt.gamma = get("gamma");
    pt.chi = get("chi");
    pt.alpha = get("alpha");
    pt.beta = get("beta");
    pt.mu = get("mu");
    pt.p = get("p");
    pt.q = get("q");
    pt.r = get("r");
    pt.F = get("F");
    pt.eta = get("eta");
    pt.delta_l = get("delta_l");
    pt.delta_m = get("delta_m");
    pt.delta_n = get("delta_n");
    return pt;
}

LinearSystem linearize(const FlightPoint& pt, FlatOutputChoice::Kind zeta_kind,
                       ControlMode::FourthControl u4, const AircraftParams& pr) {
    return assemble(pt, zeta_kind, u4, pr, false);
}

LinearSystem linearize_design(const FlightPoint& pt, FlatOutputChoice::Kind zeta_kind,
                              ControlMode::FourthControl u4, const AircraftParams& pr) {
    return assemble(pt, zeta_kind, u4, pr, true);
}

StepGains design_feedback(const LinearSystem& design, const PoleConfig& poles,
                          FlatOutputChoice::Kind kind) {
    poles.validate(kind);
    const Eigen::MatrixXd& A = design.A;
    const Eigen::MatrixXd& B = design.B;
    const double bscale = B.lpNorm<Eigen::Infinity>() + 1.0;

    StepGains out;
    out.C.setZero(4, kAugStates);

    auto chain_rows = [&](const Eigen::MatrixXd& Aeff, int ip, int n) {
        std::vector<Eigen::RowVectorXd> f(static_cast<size_t>(n));
        f[0] = Eigen::RowVectorXd::Zero(kAugStates);
        f[0](ip) = 1.0;
        for (int k = 1; k < n; ++k) f[static_cast<size_t>(k)] = f[static_cast<size_t>(k - 1)] * Aeff;
        return f;
    };

    if (kind == FlatOutputChoice::Kind::thrust) {
        // no thrust feedback; three order-5 chains on I1..I3 via the surfaces
        Eigen::MatrixXd B3 = B.rightCols(3);
        Eigen::MatrixXd M(3, 3);
        Eigen::MatrixXd R(3, kAugStates);
        const std::vector<double>* lam[3] = {&poles.lambda1, &poles.lambda2, &poles.lambda3};
        for (int p = 0; p < 3; ++p) {
            auto f = chain_rows(A, p, 5);
            for (int k = 0; k + 1 < 5; ++k)
                check_structural_zero(f[static_cast<size_t>(k)] * B3,
                                      bscale * f[static_cast<size_t>(k)].norm(), "thrust-mode chain");
            auto a = poly_from_roots(*lam[p]);
            Eigen::RowVectorXd rhs = f[4] * A;
            for (int k = 0; k < 5; ++k) rhs += a[static_cast<size_t>(k)] * f[static_cast<size_t>(k)];
            M.row(p) = f[4] * B3;
            R.row(p) = -rhs;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible())
            throw Error(Error::Kind::singularity,
                        "feedback design: surface chains uncontrollable (rank deficiency)");
        out.C.bottomRows(3) = lu.solve(R);
        return out;
    }

    // thrust chain: order 3 on I1
    auto f1chain = chain_rows(A, 0, 3);
    check_structural_zero(f1chain[0] * B, bscale, "I1 chain step 0");
    check_structural_zero(f1chain[1] * B, bscale * f1chain[1].norm(), "I1 chain step 1");
    Eigen::RowVectorXd g = f1chain[2] * B;
    // only the thrust column may act at this depth
    Eigen::RowVectorXd g_rest = g.tail(3);
    check_structural_zero(g_rest, bscale * f1chain[2].norm(), "I1 chain surface leak");
    if (std::abs(g(0)) < 1e-12 * bscale * (f1chain[2].norm() + 1.0))
        throw Error(Error::Kind::singularity, "feedback design: I1 chain uncontrollable");

    auto a1 = poly_from_roots(poles.lambda1);
    Eigen::RowVectorXd c1 = f1chain[2] * A;
    for (int k = 0; k < 3; ++k) c1 += a1[static_cast<size_t>(k)] * f1chain[static_cast<size_t>(k)];
    c1 = -c1 / g(0);
    out.C.row(0) = c1;

    // fold the thrust feedback, then place the three surface chains
    Eigen::MatrixXd A1 = A + B.col(0) * c1;
    Eigen::MatrixXd B3 = B.rightCols(3);

    const std::vector<double>* lam[3] = {&poles.lambda2, &poles.lambda3, &poles.lambda4};
    const int orders[3] = {5, 5, 3};
    Eigen::MatrixXd M(3, 3);
    Eigen::MatrixXd R(3, kAugStates);
    for (int p = 0; p < 3; ++p) {
        auto f = chain_rows(A1, p + 1, orders[p]);
        for (int k = 0; k + 1 < orders[p]; ++k)
            check_structural_zero(f[static_cast<size_t>(k)] * B3,
                                  bscale * (f[static_cast<size_t>(k)].norm() + 1.0),
                                  "surface chain");
        auto a = poly_from_roots(*lam[p]);
        Eigen::RowVectorXd rhs = f[static_cast<size_t>(orders[p] - 1)] * A1;
        for (int k = 0; k < orders[p]; ++k)
            rhs += a[static_cast<size_t>(k)] * f[static_cast<size_t>(k)];
        M.row(p) = f[static_cast<size_t>(orders[p] - 1)] * B3;
        R.row(p) = -rhs;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible())
        throw Error(Error::Kind::singularity,
                    "feedback design: surface chains uncontrollable (rank deficiency)");
    out.C.bottomRows(3) = lu.solve(R);
    return out;
}

FeedbackLaw design_feedback_along(const std::vector<double>& times,
                                  const std::vector<FlightPoint>& planned,
                                  const PoleConfig& poles, FlatOutputChoice::Kind kind,
                                  ControlMode::FourthControl u4, const AircraftParams& pr) {
    if (times.size() != planned.size() || times.empty())
        throw Error(Error::Kind::config, "feedback design: times and points must match");
    FeedbackLaw law;
    law.times = times;
    law.zeta_kind = kind;
    law.u4 = u4;
    law.steps.reserve(planned.size());
    for (const auto& pt : planned)
        law.steps.push_back(design_feedback(linearize_design(pt, kind, u4, pr), poles, kind));
    return law;
}

Eigen::Vector4d feedback_eval(const FeedbackLaw& law, const ErrorState& err, double t) {
    if (law.times.empty())
        throw Error(Error::Kind::config, "feedback law is empty");
    const double t0 = law.times.front(), tn = law.times.back();
    const double slack = 1e-9 * (1.0 + std::abs(tn - t0));
    if (t < t0 - slack || t > tn + slack)
        throw Error(Error::Kind::horizon, "feedback requested outside the planned horizon");

    size_t i = 0;
    while (i + 1 < law.times.size() && law.times[i + 1] <= t) ++i;

    Eigen::VectorXd x(kAugStates);
    for (int k = 0; k < 4; ++k) x(k) = err.I[static_cast<size_t>(k)];
    for (int k = 0; k < 12; ++k) x(kStateBase + k) = err.delta[static_cast<size_t>(k)];
    return law.steps[i].C * x;
}

std::vector<Eigen::RowVectorXd> chain_functionals(const LinearSystem& design,
                                                  const StepGains& gains,
                                                  FlatOutputChoice::Kind kind, int p) {
    const bool thrust = kind == FlatOutputChoice::Kind::thrust;
    int order = 0;
    if (thrust) {
        order = 5;
    } else {
        const int orders[4] = {3, 5, 5, 3};
        order = orders[p - 1];
    }

    Eigen::MatrixXd Aeff = design.A;
    if (!thrust && p >= 2) Aeff += design.B.col(0) * gains.C.row(0);

    std::vector<Eigen::RowVectorXd> f(static_cast<size_t>(order));
    f[0] = Eigen::RowVectorXd::Zero(kAugStates);
    f[0](p - 1) = 1.0;
    for (int k = 1; k < order; ++k) f[static_cast<size_t>(k)] = f[static_cast<size_t>(k - 1)] * Aeff;
    return f;
}

} // namespace flatflight

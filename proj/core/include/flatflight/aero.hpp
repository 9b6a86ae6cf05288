#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flatflight/errors.hpp"
#include "flatflight/series.hpp"

namespace flatflight {

// One polynomial term of an aerodynamic channel: theta times a monomial in
// the regressor tuple (alpha, beta, ptilde, qtilde, rtilde, dl, dm, dn),
// where ptilde = a*p, qtilde = b*q, rtilde = a*r.
struct GnaTerm {
    double theta = 0.0;
    std::array<int, 8> expo{}; // exponents on the regressor tuple
};

struct GnaCoefficients {
    std::vector<GnaTerm> CD, Cy, CL, Cl, Cm, Cn;

    int total_terms() const {
        return static_cast<int>(CD.size() + Cy.size() + CL.size() + Cl.size() + Cm.size() +
                                Cn.size());
    }
};

struct Inertia {
    double Ixx = 1.0, Iyy = 1.0, Izz = 1.0, Ixz = 0.0;
};

struct AircraftParams {
    std::string name;
    double m = 1.0;   // mass, kg
    double g = 9.81;  // gravity, m/s^2
    double S = 1.0;   // reference area, m^2
    double rho = 1.225; // air density, kg/m^3
    double a = 1.0;   // lateral reference length, m (scales p and r)
    double b = 1.0;   // longitudinal reference length, m (scales q)
    double eps = 0.0; // engine tilt angle, rad
    double y_p = 0.0; // engine lateral offset, m
    Inertia inertia;
    GnaCoefficients gna;

    Eigen::Matrix3d inertia_matrix() const {
        Eigen::Matrix3d I;
        I << inertia.Ixx, 0.0, -inertia.Ixz, 0.0, inertia.Iyy, 0.0, -inertia.Ixz, 0.0,
            inertia.Izz;
        return I;
    }

    Eigen::Matrix3d inertia_inverse() const {
        double D = inertia.Ixx * inertia.Izz - inertia.Ixz * inertia.Ixz;
        Eigen::Matrix3d Iinv;
        Iinv << inertia.Izz / D, 0.0, inertia.Ixz / D, 0.0, 1.0 / inertia.Iyy, 0.0,
            inertia.Ixz / D, 0.0, inertia.Ixx / D;
        return Iinv;
    }

    void validate() const;
};

// State and controls at one instant. z is positive downward; gamma > 0 climbs.
struct FlightPoint {
    double x = 0.0, y = 0.0, z = 0.0;          // position, m
    double V = 0.0;                            // airspeed, m/s
    double gamma = 0.0, chi = 0.0;             // flight path and azimuth, rad
    double alpha = 0.0, beta = 0.0, mu = 0.0;  // attack, sideslip, bank, rad
    double p = 0.0, q = 0.0, r = 0.0;          // body rates, rad/s
    double F = 0.0;                            // total thrust F1+F2, N
    double eta = 0.0;                          // differential thrust (F1-F2)/(F1+F2)
    double delta_l = 0.0, delta_m = 0.0, delta_n = 0.0; // surface deflections, rad

    std::array<double, 12> state() const {
        return {x, y, z, V, gamma, chi, alpha, beta, mu, p, q, r};
    }
};

// Canonical ordering of state quantities used across planning tables and
// linearization: x y z V gamma chi alpha beta mu p q r.
inline const std::array<const char*, 12>& state_names() {
    static const std::array<const char*, 12> names = {"x",     "y",    "z",  "V", "gamma", "chi",
                                                      "alpha", "beta", "mu", "p", "q",     "r"};
    return names;
}

inline const std::array<const char*, 5>& control_names() {
    static const std::array<const char*, 5> names = {"F", "eta", "delta_l", "delta_m", "delta_n"};
    return names;
}

struct ForcesMoments {
    double X = 0.0, Y = 0.0, Z = 0.0; // wind-frame forces, N
    double L = 0.0, M = 0.0, N = 0.0; // body torques, N*m
};

template <class T>
struct AeroCoeffs {
    T CD, Cy, CL, Cl, Cm, Cn;
};

template <class T>
struct ControlsT {
    T F, eta, delta_l, delta_m, delta_n;
};

template <class T>
struct WindForcesT {
    T X, Y, Z, L, M, N;
};

template <class T>
struct HEstimate {
    T p, q, r, delta_l, delta_m, delta_n;
};

namespace model {

template <class T>
T one_like(const T& proto) {
    return proto * 0.0 + 1.0;
}
inline double one_like(const double&) { return 1.0; }
inline Dual one_like(const Dual&) { return Dual(1.0); }

// Polynomial channel evaluation on the regressor tuple. Identical on reals
// and series.
template <class T>
T gna_channel(const std::vector<GnaTerm>& terms, const std::array<T, 8>& regs) {
    T acc = regs[0] * 0.0;
    for (const auto& term : terms) {
        T mono = one_like(regs[0]) * term.theta;
        for (int ri = 0; ri < 8; ++ri)
            for (int e = 0; e < term.expo[static_cast<size_t>(ri)]; ++e)
                mono = mono * regs[static_cast<size_t>(ri)];
        acc = acc + mono;
    }
    return acc;
}

template <class T>
AeroCoeffs<T> gna_eval(const GnaCoefficients& g, const T& alpha, const T& beta, const T& p,
                       const T& q, const T& r, const T& dl, const T& dm, const T& dn,
                       const AircraftParams& pr) {
    std::array<T, 8> regs = {alpha, beta, pr.a * p, pr.b * q, pr.a * r, dl, dm, dn};
    return {gna_channel(g.CD, regs), gna_channel(g.Cy, regs), gna_channel(g.CL, regs),
            gna_channel(g.Cl, regs), gna_channel(g.Cm, regs), gna_channel(g.Cn, regs)};
}

template <class T>
void wind_frame_coeffs(const T& CD, const T& CL, const T& alpha, T& Cx, T& Cz) {
    using std::sin;
    using std::cos;
    T ca = cos(alpha), sa = sin(alpha);
    Cx = ca * CD + sa * CL;
    Cz = ca * CL - sa * CD;
}

// Forces in wind axes (x along velocity, y to the right, z downward in the
// banked plane) and torques in body axes. The drag/lift pair is rotated by
// alpha into the velocity plane and together with the side-force channel by
// beta out of the symmetry plane; thrust acts along the body x axis tilted by
// eps; gravity is resolved through gamma and mu.
template <class T>
WindForcesT<T> forces_moments(const AircraftParams& pr, const T& V, const T& gamma, const T& mu,
                              const T& alpha, const T& beta, const T& p, const T& q, const T& r,
                              const ControlsT<T>& u) {
    using std::sin;
    using std::cos;

    AeroCoeffs<T> C = gna_eval(pr.gna, alpha, beta, p, q, r, u.delta_l, u.delta_m, u.delta_n, pr);

    T Cx0, Cz;
    wind_frame_coeffs(C.CD, C.CL, alpha, Cx0, Cz);

    T cb = cos(beta), sb = sin(beta);
    T Cx = cb * Cx0 - sb * C.Cy; // along -x_wind
    T Cyw = sb * Cx0 + cb * C.Cy;

    T qbarS = (0.5 * pr.rho * pr.S) * V * V;
    T cae = cos(alpha + pr.eps), sae = sin(alpha + pr.eps);
    T cg = cos(gamma), sg = sin(gamma);
    T cmu = cos(mu), smu = sin(mu);
    const double gm = pr.g * pr.m;

    WindForcesT<T> out;
    out.X = u.F * cae * cb - qbarS * Cx - gm * sg;
    out.Y = -(u.F * cae * sb) + qbarS * Cyw + gm * cg * smu;
    out.Z = -(u.F * sae) - qbarS * Cz + gm * cg * cmu;

    T Fdiff = u.eta * u.F; // F1 - F2
    out.L = (-pr.y_p * std::sin(pr.eps)) * Fdiff + qbarS * pr.a * C.Cl;
    out.M = qbarS * pr.b * C.Cm;
    out.N = (pr.y_p * std::cos(pr.eps)) * Fdiff + qbarS * pr.a * C.Cn;
    return out;
}

template <class T>
struct StateDot {
    T x, y, z, V, gamma, chi, alpha, beta, mu, p, q, r;
};

// Wind-axes attitude kinematics shared by the forward dynamics and the stage
// inversions. With W2, W3 the lateral/vertical components of the wind-frame
// rotation rate, the body rates relate linearly to (alpha', beta', mu'),
// invertible for cos(beta) != 0:
//   p =  sin(a) b' + cos(a)cos(b) mh - cos(a)sin(b) W2 - sin(a) W3
//   q =  a' + sin(b) mh + cos(b) W2
//   r = -cos(a) b' + sin(a)cos(b) mh - sin(a)sin(b) W2 + cos(a) W3
// where mh = mu' - chi' sin(gamma).
template <class T>
void wind_rotation_rates(const T& gamma, const T& mu, const T& gammadot, const T& chidot, T& W2,
                         T& W3) {
    using std::sin;
    using std::cos;
    T cg = cos(gamma);
    T cmu = cos(mu), smu = sin(mu);
    W2 = gammadot * cmu + chidot * cg * smu;
    W3 = -(gammadot * smu) + chidot * cg * cmu;
}

template <class T>
StateDot<T> dynamics_full(const AircraftParams& pr, const std::array<T, 12>& s,
                          const ControlsT<T>& u) {
    using std::sin;
    using std::cos;

    const T& V = s[3];
    const T& gamma = s[4];
    const T& chi = s[5];
    const T& alpha = s[6];
    const T& beta = s[7];
    const T& mu = s[8];
    const T& p = s[9];
    const T& q = s[10];
    const T& r = s[11];

    T cg = cos(gamma), sg = sin(gamma);
    T cb = cos(beta), sb = sin(beta);
    if (std::abs(value_of(V) * value_of(cg)) < 1e-12)
        throw Error(Error::Kind::chart_violation, "dynamics: V cos(gamma) vanishes");
    if (std::abs(value_of(cb)) < 1e-12)
        throw Error(Error::Kind::chart_violation, "dynamics: cos(beta) vanishes");

    WindForcesT<T> f = forces_moments(pr, V, gamma, mu, alpha, beta, p, q, r, u);

    StateDot<T> d;
    T cchi = cos(chi), schi = sin(chi);
    d.x = V * cchi * cg;
    d.y = V * schi * cg;
    d.z = -(V * sg);

    T cmu = cos(mu), smu = sin(mu);
    d.V = f.X / pr.m;
    T mV = pr.m * V;
    d.gamma = -(f.Y * smu + f.Z * cmu) / mV;
    d.chi = (f.Y * cmu - f.Z * smu) / (mV * cg);

    T W2, W3;
    wind_rotation_rates(gamma, mu, d.gamma, d.chi, W2, W3);
    T ca = cos(alpha), sa = sin(alpha);
    T muhat = (ca * p + sa * r + sb * W2) / cb;
    d.alpha = q - sb * muhat - cb * W2;
    d.beta = sa * p - ca * r + W3;
    d.mu = muhat + d.chi * sg;

    const Inertia& I = pr.inertia;
    T g1 = (I.Iyy - I.Izz) * q * r + I.Ixz * p * q + f.L;
    T g2 = (I.Izz - I.Ixx) * p * r + I.Ixz * (r * r - p * p) + f.M;
    T g3 = (I.Ixx - I.Iyy) * p * q - I.Ixz * r * q + f.N;
    Eigen::Matrix3d Iinv = pr.inertia_inverse();
    d.p = Iinv(0, 0) * g1 + Iinv(0, 1) * g2 + Iinv(0, 2) * g3;
    d.q = Iinv(1, 0) * g1 + Iinv(1, 1) * g2 + Iinv(1, 2) * g3;
    d.r = Iinv(2, 0) * g1 + Iinv(2, 1) * g2 + Iinv(2, 2) * g3;
    return d;
}

// Derivatives of the position/velocity/attitude blocks with the force-block
// arguments (p, q, r, delta_l, delta_m, delta_n) frozen to an estimate. With
// a zero estimate this is the simplified flat model.
template <class T>
StateDot<T> dynamics_simplified(const AircraftParams& pr, const std::array<T, 12>& s,
                                const ControlsT<T>& u, const HEstimate<T>& h) {
    using std::sin;
    using std::cos;

    const T& V = s[3];
    const T& gamma = s[4];
    const T& chi = s[5];
    const T& alpha = s[6];
    const T& beta = s[7];
    const T& mu = s[8];
    const T& p = s[9];
    const T& q = s[10];
    const T& r = s[11];

    T cg = cos(gamma), sg = sin(gamma);
    T cb = cos(beta), sb = sin(beta);
    if (std::abs(value_of(V) * value_of(cg)) < 1e-12)
        throw Error(Error::Kind::chart_violation, "dynamics: V cos(gamma) vanishes");
    if (std::abs(value_of(cb)) < 1e-12)
        throw Error(Error::Kind::chart_violation, "dynamics: cos(beta) vanishes");

    ControlsT<T> uh = u;
    uh.delta_l = h.delta_l;
    uh.delta_m = h.delta_m;
    uh.delta_n = h.delta_n;
    WindForcesT<T> f = forces_moments(pr, V, gamma, mu, alpha, beta, h.p, h.q, h.r, uh);

    StateDot<T> d;
    T cchi = cos(chi), schi = sin(chi);
    d.x = V * cchi * cg;
    d.y = V * schi * cg;
    d.z = -(V * sg);

    T cmu = cos(mu), smu = sin(mu);
    d.V = f.X / pr.m;
    T mV = pr.m * V;
    d.gamma = -(f.Y * smu + f.Z * cmu) / mV;
    d.chi = (f.Y * cmu - f.Z * smu) / (mV * cg);

    T W2, W3;
    wind_rotation_rates(gamma, mu, d.gamma, d.chi, W2, W3);
    T ca = cos(alpha), sa = sin(alpha);
    T muhat = (ca * p + sa * r + sb * W2) / cb;
    d.alpha = q - sb * muhat - cb * W2;
    d.beta = sa * p - ca * r + W3;
    d.mu = muhat + d.chi * sg;

    d.p = d.q = d.r = V * 0.0;
    return d;
}

} // namespace model

// --------------------------------------------------------------------------
// Real-valued entry points.
// --------------------------------------------------------------------------

AeroCoeffs<double> gna_eval(const GnaCoefficients& g, double alpha, double beta, double p,
                            double q, double r, double delta_l, double delta_m, double delta_n,
                            const AircraftParams& params);

AeroCoeffs<TaylorSeries> gna_eval(const GnaCoefficients& g, const TaylorSeries& alpha,
                                  const TaylorSeries& beta, const TaylorSeries& p,
                                  const TaylorSeries& q, const TaylorSeries& r,
                                  const TaylorSeries& delta_l, const TaylorSeries& delta_m,
                                  const TaylorSeries& delta_n, const AircraftParams& params);

void wind_frame_coeffs(double CD, double CL, double alpha, double& Cx, double& Cz);

ForcesMoments forces_moments(const FlightPoint& pt, const AircraftParams& params);

// Time derivative of the 12 states, canonical order.
std::array<double, 12> dynamics_full(const FlightPoint& pt, const AircraftParams& params);

// Time derivative of the 9 states in Xi1 u Xi2 u Xi3 with the force block
// frozen to h (p, q, r, delta_l, delta_m, delta_n).
std::array<double, 9> dynamics_simplified(const FlightPoint& pt, const AircraftParams& params,
                                          const std::array<double, 6>& h);

} // namespace flatflight

#include "flatflight/aero.hpp"

namespace flatflight {

void AircraftParams::validate() const {
    if (!(m > 0.0) || !(S > 0.0) || !(rho > 0.0))
        throw Error(Error::Kind::config, "aircraft '" + name + "': m, S, rho must be positive");
    if (!(inertia.Iyy > 0.0) || !(inertia.Ixx * inertia.Izz - inertia.Ixz * inertia.Ixz > 0.0))
        throw Error(Error::Kind::config,
                    "aircraft '" + name + "': inertia matrix not positive definite");
    if (gna.total_terms() != 45)
        throw Error(Error::Kind::config,
                    "aircraft '" + name + "': GNA model must carry exactly 45 coefficients, got " +
                        std::to_string(gna.total_terms()));
}

AeroCoeffs<double> gna_eval(const GnaCoefficients& g, double alpha, double beta, double p,
                            double q, double r, double delta_l, double delta_m, double delta_n,
                            const AircraftParams& params) {
    return model::gna_eval(g, alpha, beta, p, q, r, delta_l, delta_m, delta_n, params);
}

AeroCoeffs<TaylorSeries> gna_eval(const GnaCoefficients& g, const TaylorSeries& alpha,
                                  const TaylorSeries& beta, const TaylorSeries& p,
                                  const TaylorSeries& q, const TaylorSeries& r,
                                  const TaylorSeries& delta_l, const TaylorSeries& delta_m,
                                  const TaylorSeries& delta_n, const AircraftParams& params) {
    return model::gna_eval(g, alpha, beta, p, q, r, delta_l, delta_m, delta_n, params);
}

void wind_frame_coeffs(double CD, double CL, double alpha, double& Cx, double& Cz) {
    model::wind_frame_coeffs(CD, CL, alpha, Cx, Cz);
}

ForcesMoments forces_moments(const FlightPoint& pt, const AircraftParams& params) {
    ControlsT<double> u{pt.F, pt.eta, pt.delta_l, pt.delta_m, pt.delta_n};
    auto f = model::forces_moments(params, pt.V, pt.gamma, pt.mu, pt.alpha, pt.beta, pt.p, pt.q,
                                   pt.r, u);
    return {f.X, f.Y, f.Z, f.L, f.M, f.N};
}

std::array<double, 12> dynamics_full(const FlightPoint& pt, const AircraftParams& params) {
    ControlsT<double> u{pt.F, pt.eta, pt.delta_l, pt.delta_m, pt.delta_n};
    auto d = model::dynamics_full(params, pt.state(), u);
    return {d.x, d.y, d.z, d.V, d.gamma, d.chi, d.alpha, d.beta, d.mu, d.p, d.q, d.r};
}

std::array<double, 9> dynamics_simplified(const FlightPoint& pt, const AircraftParams& params,
                                          const std::array<double, 6>& h) {
    ControlsT<double> u{pt.F, pt.eta, pt.delta_l, pt.delta_m, pt.delta_n};
    HEstimate<double> he{h[0], h[1], h[2], h[3], h[4], h[5]};
    auto d = model::dynamics_simplified(params, pt.state(), u, he);
    return {d.x, d.y, d.z, d.V, d.gamma, d.chi, d.alpha, d.beta, d.mu};
}

} // namespace flatflight

#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flatflight/series.hpp"

namespace flatflight {

struct NewtonOptions {
    double tol = 1e-3;
    int max_iter = 20;
};

// Non-convergence is reported, not thrown: the result carries the last
// iterate and its residual norm so callers can warn or abort as they prefer.
struct NewtonResult {
    Eigen::VectorXd x;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

using PointResidual = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using PointJacobian = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Multivariate Newton on real vectors. The Jacobian defaults to forward
// finite differences with step max(1e-7, 1e-7*|x_i|); callers may supply
// analytic partials instead. Warm starts are the caller's x0.
NewtonResult newton_point(const PointResidual& residual, Eigen::VectorXd x0,
                          const NewtonOptions& options = {},
                          const PointJacobian& jacobian = nullptr);

// Linear solve A x = b over truncated series, Gaussian elimination with
// partial pivoting on constant-term magnitude. Throws Error::singularity when
// every available pivot has (numerically) vanishing constant term.
std::vector<TaylorSeries> solve_series_linear(std::vector<std::vector<TaylorSeries>> A,
                                              std::vector<TaylorSeries> b);

namespace detail {

template <class F>
void eval_series_residual_and_jacobian(F&& residual, const std::vector<TaylorSeries>& x,
                                       int order, std::vector<TaylorSeries>& r,
                                       std::vector<std::vector<TaylorSeries>>& jac) {
    size_t n = x.size();
    jac.assign(n, std::vector<TaylorSeries>());
    for (size_t j = 0; j < n; ++j) {
        std::vector<DualSeries> xd;
        xd.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            DualSeries s(order);
            for (int k = 0; k <= x[i].order() && k <= order; ++k) s[k].v = x[i][k];
            if (i == j) s[0].d = 1.0; // direction: unit constant series in slot j
            xd.push_back(std::move(s));
        }
        std::vector<DualSeries> rd = residual(xd);
        if (j == 0) {
            r.clear();
            for (const auto& e : rd) {
                TaylorSeries v(e.order());
                for (int k = 0; k <= e.order(); ++k) v[k] = e[k].v;
                r.push_back(std::move(v));
            }
            for (size_t i = 0; i < n; ++i) jac[i].resize(rd.size(), TaylorSeries(order));
        }
        for (size_t i = 0; i < rd.size(); ++i) {
            TaylorSeries col(rd[i].order());
            for (int k = 0; k <= rd[i].order(); ++k) col[k] = rd[i][k].d;
            jac[j][i] = std::move(col);
        }
    }
}

} // namespace detail

// Newton operator on truncated series for algebraic systems R(x(t), t) = 0.
// x0 must carry constant terms that already solve the order-0 system; each
// step doubles the valid order until target_order is reached. The residual
// functor must be callable on vectors of BasicTaylorSeries<S> for S = double
// and S = Dual; Jacobians are propagated exactly through the dual scalars.
template <class F>
std::vector<TaylorSeries> newton_series(F&& residual, std::vector<TaylorSeries> x,
                                        int target_order) {
    size_t n = x.size();
    for (auto& xi : x) xi = xi.extended(target_order);

    int steps = 0;
    for (int reach = 1; reach < target_order + 1; reach *= 2) ++steps;
    steps = std::max(steps, 1);

    for (int s = 0; s < steps; ++s) {
        std::vector<TaylorSeries> r;
        std::vector<std::vector<TaylorSeries>> jcols;
        detail::eval_series_residual_and_jacobian(residual, x, target_order, r, jcols);
        if (r.size() != n)
            throw Error(Error::Kind::config, "newton_series: residual dimension mismatch");

        // rows-of-columns -> row-major matrix
        std::vector<std::vector<TaylorSeries>> A(n, std::vector<TaylorSeries>(n, TaylorSeries(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) A[i][j] = jcols[j][i];

        std::vector<TaylorSeries> delta = solve_series_linear(std::move(A), r);
        for (size_t i = 0; i < n; ++i)
            x[i] = (x[i] - delta[i].extended(target_order)).truncated(target_order);
    }
    return x;
}

} // namespace flatflight

#include "flatflight/newton.hpp"

#include <algorithm>

namespace flatflight {

NewtonResult newton_point(const PointResidual& residual, Eigen::VectorXd x0,
                          const NewtonOptions& options, const PointJacobian& jacobian) {
    NewtonResult out;
    out.x = std::move(x0);
    const auto n = out.x.size();

    Eigen::VectorXd r = residual(out.x);
    out.residual_norm = r.lpNorm<Eigen::Infinity>();

    for (int it = 0; it < options.max_iter; ++it) {
        if (out.residual_norm <= options.tol) {
            out.converged = true;
            return out;
        }

        Eigen::MatrixXd J;
        if (jacobian) {
            J = jacobian(out.x);
        } else {
            J.resize(r.size(), n);
            for (Eigen::Index j = 0; j < n; ++j) {
                double h = std::max(1e-7, 1e-7 * std::abs(out.x[j]));
                Eigen::VectorXd xp = out.x;
                xp[j] += h;
                J.col(j) = (residual(xp) - r) / h;
            }
        }

        Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
        if (!lu.isInvertible()) {
            out.converged = false;
            return out;
        }

        out.x -= lu.solve(r);
        out.iterations = it + 1;
        r = residual(out.x);
        out.residual_norm = r.lpNorm<Eigen::Infinity>();
    }

    out.converged = out.residual_norm <= options.tol;
    return out;
}

std::vector<TaylorSeries> solve_series_linear(std::vector<std::vector<TaylorSeries>> A,
                                              std::vector<TaylorSeries> b) {
    const size_t n = b.size();
    if (A.size() != n)
        throw Error(Error::Kind::config, "solve_series_linear: dimension mismatch");

    // scale for the singularity test: largest constant term in the matrix
    double scale = 0.0;
    for (const auto& row : A)
        for (const auto& e : row) scale = std::max(scale, std::abs(value_of(e)));
    const double pivot_floor = std::max(scale, 1.0) * 1e-14;

    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        double best = std::abs(value_of(A[col][col]));
        for (size_t r = col + 1; r < n; ++r) {
            double v = std::abs(value_of(A[r][col]));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best <= pivot_floor)
            throw Error(Error::Kind::singularity,
                        "series linear solve: vanishing pivot in column " + std::to_string(col));
        if (pivot != col) {
            std::swap(A[pivot], A[col]);
            std::swap(b[pivot], b[col]);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            if (std::abs(value_of(A[r][col])) == 0.0) {
                bool zero = true;
                for (int k = 0; k <= A[r][col].order() && zero; ++k)
                    zero = (A[r][col][k] == 0.0);
                if (zero) continue;
            }
            TaylorSeries f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[col][c];
            b[r] = b[r] - f * b[col];
        }
    }

    std::vector<TaylorSeries> x;
    x.reserve(n);
    for (size_t i = 0; i < n; ++i) x.push_back(b[i] / A[i][i]);
    return x;
}

} // namespace flatflight

// Multiple-shooting solver for the radial vortex equation.
//
// In the strongly interacting regime eps ~ 900 and the linearised equation grows like
// exp(sqrt(2 eps) xi) across the bulk, so a single outward shot from the axis cannot be
// steered by double-precision parameters.  The interval is cut into segments short enough
// that each shot amplifies perturbations by at most ~e^3, and all segments are solved
// together by Newton's method with exact sensitivities from the variational equations.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "gp_detail.hpp"
#include "vortexem/gp_radial.hpp"

namespace vortexem {

namespace {

using State = std::array<double, 8>;  // psi, psi', then (d/dtheta) pairs for theta1, theta2, eps

struct Equation {
    double n2;
    double g;
    double eps;

    State operator()(double x, const State& y) const {
        State d{};
        const double psi = y[0];
        const double inv = 1.0 / x;
        const double centrifugal = n2 * inv * inv;
        d[0] = y[1];
        d[1] = -y[1] * inv + (centrifugal - eps + g * psi * psi) * psi;
        const double jac = centrifugal - eps + 3.0 * g * psi * psi;
        for (int k = 2; k < 8; k += 2) {
            d[k] = y[k + 1];
            d[k + 1] = -y[k + 1] * inv + jac * y[k];
        }
        d[7] -= psi;
        return d;
    }
};

State rk4_step(const Equation& f, double x, const State& y, double h) {
    auto axpy = [](const State& a, double s, const State& b) {
        State r;
        for (int i = 0; i < 8; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    const State k1 = f(x, y);
    const State k2 = f(x + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = f(x + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = f(x + h, axpy(y, h, k3));
    State out;
    for (int i = 0; i < 8; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

class MultipleShooting {
public:
    MultipleShooting(int n, double g, const RadialGrid& grid, const SolverOptions& options,
                     std::size_t segments)
        : n_(n), g_(g), grid_(grid), options_(options), weights_(detail::trapezoid_weights(grid)) {
        const std::size_t N = grid.size();
        bounds_.resize(segments + 1);
        for (std::size_t k = 0; k <= segments; ++k)
            bounds_[k] = (k * (N - 1) + segments / 2) / segments;
        bounds_.front() = 0;
        bounds_.back() = N - 1;
    }

    std::size_t segments() const { return bounds_.size() - 1; }
    std::size_t unknowns() const { return 2 * segments(); }

    Eigen::VectorXd pack(const detail::Iterate& guess) const {
        Eigen::VectorXd X(unknowns());
        const double x0 = grid_[0];
        const double shape = detail::series_start(n_, g_, 1.0, guess.eps, x0).psi;
        X[0] = guess.psi[0] / shape;
        for (std::size_t k = 1; k < segments(); ++k) {
            X[2 * k - 1] = guess.psi[bounds_[k]];
            X[2 * k] = guess.dpsi[bounds_[k]];
        }
        X[unknowns() - 1] = guess.eps;
        return X;
    }

    struct Evaluation {
        bool ok = false;
        Eigen::VectorXd F;
        Eigen::MatrixXd J;
        std::vector<double> psi, dpsi;
        double residual = 0.0;
    };

    Evaluation evaluate(const Eigen::VectorXd& X, bool with_jacobian) const {
        const std::size_t K = segments();
        const std::size_t N = grid_.size();
        const std::size_t M = unknowns();
        const std::size_t eps_col = M - 1;
        const double eps = X[eps_col];
        const Equation eq{static_cast<double>(n_) * n_, g_, eps};

        Evaluation ev;
        ev.F = Eigen::VectorXd::Zero(M);
        if (with_jacobian) ev.J = Eigen::MatrixXd::Zero(M, M);
        ev.psi.assign(N, 0.0);
        ev.dpsi.assign(N, 0.0);
        Eigen::RowVectorXd norm_row = Eigen::RowVectorXd::Zero(M);

        for (std::size_t k = 0; k < K; ++k) {
            State y{};
            std::size_t col1 = 0, col2 = 0;
            bool two_params = false;
            if (k == 0) {
                const auto s = detail::series_start(n_, g_, X[0], eps, grid_[0]);
                y = {s.psi, s.dpsi, s.dpsi_dC, s.ddpsi_dC, 0.0, 0.0, s.dpsi_deps, s.ddpsi_deps};
                col1 = 0;
            } else {
                y = {X[2 * k - 1], X[2 * k], 1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
                col1 = 2 * k - 1;
                col2 = 2 * k;
                two_params = true;
            }

            auto record = [&](std::size_t i, const State& s) {
                ev.psi[i] = s[0];
                ev.dpsi[i] = s[1];
                const double w = 2.0 * weights_[i] * grid_[i] * s[0];
                norm_row[col1] += w * s[2];
                if (two_params) norm_row[col2] += w * s[4];
                norm_row[eps_col] += w * s[6];
            };

            const std::size_t first = bounds_[k];
            const std::size_t last = bounds_[k + 1];
            record(first, y);
            for (std::size_t i = first; i < last; ++i) {
                y = advance(eq, i, y);
                for (double v : y)
                    if (!std::isfinite(v)) return ev;
                if (i + 1 < last || k + 1 == K) record(i + 1, y);
            }

            if (k + 1 < K) {
                const std::size_t row = 2 * k;
                ev.F[row] = y[0] - X[2 * k + 1];
                ev.F[row + 1] = y[1] - X[2 * k + 2];
                if (with_jacobian) {
                    ev.J(row, col1) += y[2];
                    ev.J(row + 1, col1) += y[3];
                    if (two_params) {
                        ev.J(row, col2) += y[4];
                        ev.J(row + 1, col2) += y[5];
                    }
                    ev.J(row, eps_col) += y[6];
                    ev.J(row + 1, eps_col) += y[7];
                    ev.J(row, 2 * k + 1) -= 1.0;
                    ev.J(row + 1, 2 * k + 2) -= 1.0;
                }
            } else {
                const std::size_t row = M - 2;
                ev.F[row] = y[0];
                if (with_jacobian) {
                    ev.J(row, col1) += y[2];
                    if (two_params) ev.J(row, col2) += y[4];
                    ev.J(row, eps_col) += y[6];
                }
            }
        }

        double norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) norm += weights_[i] * grid_[i] * ev.psi[i] * ev.psi[i];
        ev.F[M - 1] = norm - 1.0;
        if (with_jacobian) ev.J.row(M - 1) = norm_row;

        double psi_scale = 0.0, dpsi_scale = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            psi_scale = std::max(psi_scale, std::abs(ev.psi[i]));
            dpsi_scale = std::max(dpsi_scale, std::abs(ev.dpsi[i]));
        }
        if (!(psi_scale > 0.0) || !(dpsi_scale > 0.0)) return ev;
        double r = std::abs(ev.F[M - 1]);
        for (std::size_t k = 0; k + 1 < K; ++k) {
            r = std::max(r, std::abs(ev.F[2 * k]) / psi_scale);
            r = std::max(r, std::abs(ev.F[2 * k + 1]) / dpsi_scale);
        }
        r = std::max(r, std::abs(ev.F[M - 2]) / psi_scale);
        ev.residual = r;
        ev.ok = std::isfinite(r);
        return ev;
    }

private:
    // Advances from node i to node i+1.  The first cell spans several decades in xi
    // (xi_min ~ 1e-6 to ~h), so it is crossed with geometrically growing substeps.
    State advance(const Equation& eq, std::size_t i, State y) const {
        const double a = grid_[i];
        const double b = grid_[i + 1];
        if (i == 0 && b / a > 1.5) {
            const int steps = static_cast<int>(std::ceil(std::log(b / a) / std::log(1.04)));
            const double ratio = std::pow(b / a, 1.0 / steps);
            double x = a;
            for (int s = 0; s < steps; ++s) {
                const double next = s + 1 == steps ? b : x * ratio;
                y = rk4_step(eq, x, y, next - x);
                x = next;
            }
            return y;
        }
        const int m = options_.rk_substeps;
        const double h = (b - a) / m;
        for (int s = 0; s < m; ++s) y = rk4_step(eq, a + s * h, y, s + 1 == m ? b - (a + s * h) : h);
        return y;
    }

    int n_;
    double g_;
    const RadialGrid& grid_;
    const SolverOptions& options_;
    std::vector<double> weights_;
    std::vector<std::size_t> bounds_;
};

detail::StepResult shoot(int n, double g, const RadialGrid& grid, const SolverOptions& options,
                         const detail::Iterate& guess) {
    const double growth = std::sqrt(2.0 * std::max(guess.eps, 1.0) + 3.0 * g);
    const std::size_t max_segments = std::max<std::size_t>(1, (grid.size() - 1) / 8);
    const std::size_t segments =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(growth / 3.0)), 1, max_segments);
    MultipleShooting ms(n, g, grid, options, segments);

    detail::StepResult result;
    Eigen::VectorXd X = ms.pack(guess);
    auto ev = ms.evaluate(X, true);
    if (!ev.ok) return result;

    for (int it = 0; it < options.max_newton; ++it) {
        result.residual = ev.residual;
        if (ev.residual < options.tol) {
            detail::Iterate sol{std::move(ev.psi), std::move(ev.dpsi), X[X.size() - 1]};
            sol.psi.back() = 0.0;
            const auto w = detail::trapezoid_weights(grid);
            double norm = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) norm += w[i] * grid[i] * sol.psi[i] * sol.psi[i];
            const double scale = 1.0 / std::sqrt(norm);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                sol.psi[i] *= scale;
                sol.dpsi[i] *= scale;
            }
            if (sol.psi[grid.size() / 2] < 0.0) {
                for (auto& v : sol.psi) v = -v;
                for (auto& v : sol.dpsi) v = -v;
            }
            result.solution = std::move(sol);
            return result;
        }
        ++result.iterations;

        // Column equilibration: the amplitude C and the segment slopes differ by orders of
        // magnitude from the segment values.
        Eigen::VectorXd colscale(ev.J.cols());
        for (Eigen::Index c = 0; c < ev.J.cols(); ++c) {
            const double m = ev.J.col(c).cwiseAbs().maxCoeff();
            colscale[c] = m > 0.0 ? 1.0 / m : 1.0;
        }
        const Eigen::MatrixXd Js = ev.J * colscale.asDiagonal();
        Eigen::VectorXd step = Js.partialPivLu().solve(-ev.F);
        step = colscale.asDiagonal() * step;
        if (!step.allFinite()) return result;

        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 12; ++ls, lambda *= 0.5) {
            const Eigen::VectorXd trial = X + lambda * step;
            auto ev_trial = ms.evaluate(trial, true);
            if (ev_trial.ok && (ev_trial.residual < (1.0 - 1e-4 * lambda) * ev.residual ||
                                ev_trial.residual < options.tol)) {
                X = trial;
                ev = std::move(ev_trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) return result;
    }
    result.residual = ev.residual;
    return result;
}

}  // namespace

CondensateProfile solve_profile(int n, double n1d_a, const RadialGrid& grid, const SolverOptions& options) {
    detail::check_solver_arguments(n, n1d_a, grid, options);
    return detail::run_continuation(
        n, n1d_a, grid, SolverTag::Shooting,
        [&](double g, const detail::Iterate& guess) { return shoot(n, g, grid, options, guess); });
}

}  // namespace vortexem

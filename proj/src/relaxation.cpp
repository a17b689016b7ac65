#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "gp_detail.hpp"
#include "vortexem/finite_difference.hpp"
#include "vortexem/gp_radial.hpp"

namespace vortexem {

namespace {

struct Discretisation {
    int n;
    double g;
    const RadialGrid& grid;
    std::vector<fd::Stencil> d1, d2;
    std::vector<double> weights;

    Discretisation(int n_, double g_, const RadialGrid& grid_)
        : n(n_), g(g_), grid(grid_), weights(detail::trapezoid_weights(grid_)) {
        const std::size_t N = grid.size();
        d1.reserve(N);
        d2.reserve(N);
        for (std::size_t i = 0; i < N; ++i) {
            d1.push_back(i > 0 && i + 1 < N ? fd::first_derivative_stencil(i, N) : fd::Stencil{0, {}});
            d2.push_back(i > 0 && i + 1 < N ? fd::second_derivative_stencil(i, N) : fd::Stencil{0, {}});
        }
    }

    // Series ratio psi(x0)/psi(x1) and its derivative with respect to the coefficient a.
    struct Ratio {
        double r, dr_da, a, da_dpsi0, da_deps;
    };
    Ratio ratio(double psi0, double eps) const {
        const double x0 = grid[0], x1 = grid[1];
        const double k = 4.0 * (n + 1);
        const double C = n == 0 ? psi0 : 0.0;
        Ratio out;
        out.a = (eps - g * C * C) / k;
        out.da_dpsi0 = n == 0 ? -2.0 * g * C / k : 0.0;
        out.da_deps = 1.0 / k;
        const double q = std::pow(x0 / x1, n);
        const double den = 1.0 - out.a * x1 * x1;
        out.r = q * (1.0 - out.a * x0 * x0) / den;
        out.dr_da = q * (x1 * x1 - x0 * x0) / (den * den);
        return out;
    }

    // psi over the whole grid from the unknown vector (the last node is pinned to zero).
    std::vector<double> full_psi(const Eigen::VectorXd& X) const {
        std::vector<double> psi(grid.size(), 0.0);
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) psi[i] = X[static_cast<Eigen::Index>(i)];
        return psi;
    }

    struct Evaluation {
        Eigen::VectorXd F;
        double residual = 0.0;
    };

    // The boundary row is divided by h^2 so that all rows carry the units of the differential
    // equation; otherwise the merit function is dominated by the normalisation row.
    Evaluation evaluate(const Eigen::VectorXd& X, Eigen::SparseMatrix<double>* J) const {
        const std::size_t N = grid.size();
        const auto M = static_cast<Eigen::Index>(N);
        const Eigen::Index eps_col = M - 1;
        const double eps = X[eps_col];
        const double h = grid.spacing();
        const double n2 = static_cast<double>(n) * n;
        const auto psi = full_psi(X);

        Evaluation ev;
        ev.F = Eigen::VectorXd::Zero(M);
        std::vector<Eigen::Triplet<double>> trip;
        if (J) trip.reserve(N * 12);

        double psi_scale = 0.0;
        for (double v : psi) psi_scale = std::max(psi_scale, std::abs(v));

        const auto rt = ratio(psi[0], eps);
        const double ih2 = 1.0 / (h * h);
        ev.F[0] = ih2 * (psi[0] - rt.r * psi[1]);
        if (J) {
            trip.emplace_back(0, 0, ih2 * (1.0 - psi[1] * rt.dr_da * rt.da_dpsi0));
            trip.emplace_back(0, 1, -ih2 * rt.r);
            trip.emplace_back(0, eps_col, -ih2 * psi[1] * rt.dr_da * rt.da_deps);
        }
        double worst = psi_scale > 0.0 ? std::abs(psi[0] - rt.r * psi[1]) / psi_scale : 0.0;
        double interior_worst = 0.0, interior_scale = 0.0;

        for (std::size_t i = 1; i + 1 < N; ++i) {
            const double x = grid[i];
            const auto row = static_cast<Eigen::Index>(i);
            double r = 0.0, s = 0.0;
            auto add = [&](std::size_t j, double c) {
                const double t = c * psi[j];
                r += t;
                s += std::abs(t);
                if (J && j + 1 < N) trip.emplace_back(row, static_cast<Eigen::Index>(j), c);
            };
            for (std::size_t j = 0; j < d2[i].weights.size(); ++j)
                add(static_cast<std::size_t>(d2[i].first) + j, d2[i].weights[j] * ih2);
            for (std::size_t j = 0; j < d1[i].weights.size(); ++j)
                add(static_cast<std::size_t>(d1[i].first) + j, d1[i].weights[j] / (h * x));
            const double v = psi[i];
            const double lin = -n2 / (x * x) + eps;
            r += lin * v - g * v * v * v;
            s += n2 / (x * x) * std::abs(v) + std::abs(eps * v) + g * std::abs(v * v * v);
            ev.F[row] = r;
            interior_worst = std::max(interior_worst, std::abs(r));
            interior_scale = std::max(interior_scale, s);
            if (J) {
                trip.emplace_back(row, row, lin - 3.0 * g * v * v);
                trip.emplace_back(row, eps_col, v);
            }
        }
        if (interior_scale > 0.0) worst = std::max(worst, interior_worst / interior_scale);

        double norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            norm += weights[i] * grid[i] * psi[i] * psi[i];
            if (J && i + 1 < N)
                trip.emplace_back(eps_col, static_cast<Eigen::Index>(i), 2.0 * weights[i] * grid[i] * psi[i]);
        }
        ev.F[eps_col] = norm - 1.0;
        ev.residual = std::max(worst, std::abs(norm - 1.0));

        if (J) {
            J->resize(M, M);
            J->setFromTriplets(trip.begin(), trip.end());
        }
        return ev;
    }

    // <psi, L psi> / <psi, psi> with L the discrete nonlinear operator, over interior nodes.
    double rayleigh_quotient(const std::vector<double>& psi) const {
        const std::size_t N = grid.size();
        const double h = grid.spacing();
        const double n2 = static_cast<double>(n) * n;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 1; i + 1 < N; ++i) {
            const double x = grid[i];
            double lap = 0.0;
            for (std::size_t j = 0; j < d2[i].weights.size(); ++j)
                lap += d2[i].weights[j] / (h * h) * psi[static_cast<std::size_t>(d2[i].first) + j];
            for (std::size_t j = 0; j < d1[i].weights.size(); ++j)
                lap += d1[i].weights[j] / (h * x) * psi[static_cast<std::size_t>(d1[i].first) + j];
            const double v = psi[i];
            const double Lv = -lap + n2 / (x * x) * v + g * v * v * v;
            num += weights[i] * x * v * Lv;
            den += weights[i] * x * v * v;
        }
        return num / den;
    }
};

detail::StepResult relax(int n, double g, const RadialGrid& grid, const SolverOptions& options,
                         const detail::Iterate& guess) {
    const Discretisation disc(n, g, grid);
    const std::size_t N = grid.size();
    Eigen::VectorXd X(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i + 1 < N; ++i) X[static_cast<Eigen::Index>(i)] = guess.psi[i];
    X[static_cast<Eigen::Index>(N - 1)] = guess.eps;

    detail::StepResult result;
    Eigen::SparseMatrix<double> J;
    auto ev = disc.evaluate(X, &J);
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    bool analysed = false;

    // The discrete residual cannot be driven much below eps_machine / (h^2 eps) relative to the
    // stencil terms, so convergence is judged on the size of the Newton update instead.
    auto finish = [&]() {
        detail::Iterate sol;
        sol.psi = disc.full_psi(X);
        if (sol.psi[N / 2] < 0.0)
            for (auto& v : sol.psi) v = -v;
        sol.eps = disc.rayleigh_quotient(sol.psi);
        result.residual = ev.residual;
        result.solution = std::move(sol);
    };

    for (int it = 0; it < options.max_newton; ++it) {
        result.residual = ev.residual;
        if (!std::isfinite(ev.residual)) return result;
        ++result.iterations;

        if (!analysed) {
            lu.analyzePattern(J);
            analysed = true;
        }
        lu.factorize(J);
        if (lu.info() != Eigen::Success) return result;
        const Eigen::VectorXd step = lu.solve(-ev.F);
        if (!step.allFinite()) return result;

        const Eigen::Index M = X.size();
        const double psi_scale = X.head(M - 1).cwiseAbs().maxCoeff();
        const double update = std::max(step.head(M - 1).cwiseAbs().maxCoeff() / psi_scale,
                                       std::abs(step[M - 1]) / std::max(1.0, std::abs(X[M - 1])));

        const double f0 = ev.F.norm();
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 12; ++ls, lambda *= 0.5) {
            const Eigen::VectorXd trial = X + lambda * step;
            Eigen::SparseMatrix<double> Jt;
            auto ev_trial = disc.evaluate(trial, &Jt);
            if (std::isfinite(ev_trial.residual) &&
                (ev_trial.F.norm() < (1.0 - 1e-4 * lambda) * f0 || update < options.tol)) {
                X = trial;
                ev = std::move(ev_trial);
                J = std::move(Jt);
                accepted = true;
                break;
            }
        }
        if (!accepted) return result;
        if (update < options.tol) {
            finish();
            return result;
        }
    }
    return result;
}

}  // namespace

CondensateProfile relax_profile(int n, double n1d_a, const RadialGrid& grid, const SolverOptions& options) {
    detail::check_solver_arguments(n, n1d_a, grid, options);
    return detail::run_continuation(
        n, n1d_a, grid, SolverTag::Relaxation,
        [&](double g, const detail::Iterate& guess) { return relax(n, g, grid, options, guess); });
}

}  // namespace vortexem

#include "vortexem/gp_radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gp_detail.hpp"
#include "vortexem/errors.hpp"
#include "vortexem/finite_difference.hpp"

namespace vortexem {

std::string_view to_string(SolverTag tag) {
    return tag == SolverTag::Shooting ? "shooting" : "relaxation";
}

SolverTag parse_solver_tag(std::string_view text) {
    if (text == "shooting") return SolverTag::Shooting;
    if (text == "relaxation") return SolverTag::Relaxation;
    throw std::invalid_argument("unknown solver '" + std::string(text) + "'");
}

std::vector<double> CondensateProfile::density() const {
    std::vector<double> u(psi.size());
    std::transform(psi.begin(), psi.end(), u.begin(), [](double v) { return v * v; });
    return u;
}

double CondensateProfile::norm() const {
    std::vector<double> f(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) f[i] = grid[i] * psi[i] * psi[i];
    return fd::trapezoid(grid.points(), f);
}

std::vector<double> density_derivative(const CondensateProfile& p) {
    return fd::derivative(p.density(), p.grid.spacing());
}

int count_nodes(const std::vector<double>& psi) {
    double scale = 0.0;
    for (double v : psi) scale = std::max(scale, std::abs(v));
    const double floor = 1e-12 * scale;
    int nodes = 0;
    int last_sign = 0;
    for (double v : psi) {
        if (std::abs(v) <= floor) continue;
        const int s = v > 0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

double discretisation_residual(const CondensateProfile& p) {
    const std::size_t N = p.grid.size();
    const double h = p.grid.spacing();
    const double g = 4.0 * p.n1d_a;
    const double n2 = static_cast<double>(p.n) * p.n;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < N; ++i) {
        const auto d2 = fd::second_derivative_stencil(i, N);
        const auto d1 = fd::first_derivative_stencil(i, N);
        const double x = p.grid[i];
        double r = 0.0;
        double s = 0.0;
        for (std::size_t j = 0; j < d2.weights.size(); ++j) {
            const double t = d2.weights[j] / (h * h) * p.psi[d2.first + j];
            r += t;
            s += std::abs(t);
        }
        for (std::size_t j = 0; j < d1.weights.size(); ++j) {
            const double t = d1.weights[j] / (h * x) * p.psi[d1.first + j];
            r += t;
            s += std::abs(t);
        }
        const double v = p.psi[i];
        r += (-n2 / (x * x) + p.eigenvalue) * v - g * v * v * v;
        s += n2 / (x * x) * std::abs(v) + std::abs(p.eigenvalue * v) + g * std::abs(v * v * v);
        worst = std::max(worst, std::abs(r));
        scale = std::max(scale, s);
    }
    return scale > 0.0 ? worst / scale : worst;
}

namespace detail {

void check_solver_arguments(int n, double n1d_a, const RadialGrid& grid, const SolverOptions& o) {
    if (n < 0) throw std::invalid_argument("vortex order n must be >= 0");
    if (!(n1d_a >= 0.0) || !std::isfinite(n1d_a)) throw std::invalid_argument("n1d_a must be >= 0");
    if (!(o.tol >= 1e-12 && o.tol <= 1e-4)) throw std::invalid_argument("tol must lie in [1e-12, 1e-4]");
    if (grid.size() < RadialGrid::min_count) throw std::invalid_argument("grid too small");
    if (o.max_newton < 1 || o.rk_substeps < 1) throw std::invalid_argument("bad iteration limits");
}

std::vector<double> trapezoid_weights(const RadialGrid& grid) {
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double half = 0.5 * (grid[i + 1] - grid[i]);
        w[i] += half;
        w[i + 1] += half;
    }
    return w;
}

Iterate initial_guess(int n, const RadialGrid& grid) {
    const std::size_t N = grid.size();
    Iterate it;
    it.psi.resize(N);
    it.dpsi.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double x = grid[i];
        const double xn = std::pow(x, n);
        it.psi[i] = xn * (1.0 - x * x);
        it.dpsi[i] = (n == 0 ? 0.0 : n * xn / x) * (1.0 - x * x) - 2.0 * x * xn;
    }
    it.psi.back() = 0.0;
    const auto w = trapezoid_weights(grid);
    double norm = 0.0;
    double kinetic = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double x = grid[i];
        norm += w[i] * x * it.psi[i] * it.psi[i];
        kinetic += w[i] * x * (it.dpsi[i] * it.dpsi[i] + n * n * it.psi[i] * it.psi[i] / (x * x));
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < N; ++i) {
        it.psi[i] *= scale;
        it.dpsi[i] *= scale;
    }
    it.eps = kinetic / norm;
    return it;
}

SeriesStart series_start(int n, double g, double C, double eps, double xi) {
    const double k = 4.0 * (n + 1);
    const double a = (eps - (n == 0 ? g * C * C : 0.0)) / k;
    const double da_dC = n == 0 ? -2.0 * g * C / k : 0.0;
    const double da_deps = 1.0 / k;
    const double xn = std::pow(xi, n);
    const double xn2 = xn * xi * xi;                      // xi^(n+2)
    const double xnm1 = n == 0 ? 0.0 : n * xn / xi;       // n xi^(n-1)
    const double xnp1 = (n + 2) * xn * xi;                // (n+2) xi^(n+1)
    SeriesStart s;
    s.psi = C * (xn - a * xn2);
    s.dpsi = C * (xnm1 - a * xnp1);
    s.dpsi_dC = xn - a * xn2 - C * xn2 * da_dC;
    s.ddpsi_dC = xnm1 - a * xnp1 - C * xnp1 * da_dC;
    s.dpsi_deps = -C * xn2 * da_deps;
    s.ddpsi_deps = -C * xnp1 * da_deps;
    return s;
}

CondensateProfile run_continuation(
    int n, double n1d_a, const RadialGrid& grid, SolverTag tag,
    const std::function<StepResult(double g, const Iterate& guess)>& step) {
    const double g_target = 4.0 * n1d_a;
    int total_iterations = 0;
    bool noded = false;

    auto attempt = [&](double g, const Iterate& guess) -> StepResult {
        StepResult r = step(g, guess);
        total_iterations += r.iterations;
        noded = r.solution && count_nodes(r.solution->psi) != 0;
        if (noded) r.solution.reset();
        return r;
    };

    StepResult current = attempt(0.0, initial_guess(n, grid));
    if (noded) throw NodeDetected(std::string(to_string(tag)) + ": linear problem converged to an excited state");
    if (!current.solution) {
        throw NonConvergence(std::string(to_string(tag)) + ": linear (n1d_a = 0) problem did not converge",
                             current.residual, total_iterations);
    }

    double g = 0.0;
    double increment = g_target;
    const double min_increment = 1e-7 * std::max(g_target, 1.0);
    while (g < g_target) {
        const double g_try = std::min(g_target, g + increment);
        // First-order guess for the eigenvalue shift: d eps / d g ~ int xi psi^4.
        Iterate guess = *current.solution;
        {
            const auto w = trapezoid_weights(grid);
            double quartic = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                quartic += w[i] * grid[i] * std::pow(guess.psi[i], 4);
            guess.eps += (g_try - g) * quartic;
        }
        StepResult trial = attempt(g_try, guess);
        if (trial.solution) {
            current = std::move(trial);
            g = g_try;
            increment *= 2.0;
        } else {
            increment *= 0.5;
            if (increment < min_increment) {
                if (noded)
                    throw NodeDetected(std::string(to_string(tag)) +
                                       ": continuation keeps landing on noded states");
                throw NonConvergence(std::string(to_string(tag)) + ": continuation stalled at n1d_a = " +
                                         std::to_string(g / 4.0),
                                     trial.residual, total_iterations);
            }
        }
    }

    CondensateProfile p{grid, std::move(current.solution->psi), current.solution->eps, n, n1d_a, tag,
                        current.residual, total_iterations};
    if (count_nodes(p.psi) != 0) throw NodeDetected("solution has interior nodes");
    return p;
}

}  // namespace detail
}  // namespace vortexem

#pragma once

// Pieces shared by the shooting and relaxation solvers.

#include <functional>
#include <optional>
#include <vector>

#include "vortexem/gp_radial.hpp"

namespace vortexem::detail {

struct Iterate {
    std::vector<double> psi;
    std::vector<double> dpsi;  // may be empty (relaxation does not track psi')
    double eps = 0.0;
};

struct StepResult {
    std::optional<Iterate> solution;  // empty when Newton failed
    int iterations = 0;
    double residual = 0.0;
};

void check_solver_arguments(int n, double n1d_a, const RadialGrid& grid, const SolverOptions& o);

/// xi^n (1 - xi^2), normalised, with eps from its Rayleigh quotient.
Iterate initial_guess(int n, const RadialGrid& grid);

/// Series start psi ~ C xi^n (1 - a xi^2) with a = (eps - g C^2 [n == 0]) / (4 (n + 1)).
struct SeriesStart {
    double psi, dpsi;           // value and derivative at xi
    double dpsi_dC, ddpsi_dC;   // sensitivities to the amplitude C
    double dpsi_deps, ddpsi_deps;
};
SeriesStart series_start(int n, double g, double C, double eps, double xi);

/// Trapezoid weights of a uniform grid.
std::vector<double> trapezoid_weights(const RadialGrid& grid);

/// Common continuation driver: solves g = 0 from initial_guess(), then raises g towards
/// 4 n1d_a, halving the increment after a failed (or noded) Newton solve and doubling it
/// after a success.
CondensateProfile run_continuation(
    int n, double n1d_a, const RadialGrid& grid, SolverTag tag,
    const std::function<StepResult(double g, const Iterate& guess)>& step);

}  // namespace vortexem::detail

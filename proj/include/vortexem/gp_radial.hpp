#pragma once

#include <string_view>
#include <vector>

#include "vortexem/radial_grid.hpp"

namespace vortexem {

enum class SolverTag { Shooting, Relaxation };

std::string_view to_string(SolverTag tag);
SolverTag parse_solver_tag(std::string_view text);

/// Nodeless solution of the dimensionless radial Gross-Pitaevskii equation
///
///   psi'' + psi'/xi - n^2 psi / xi^2 + eps psi - 4 n1d_a psi^3 = 0,   psi(1) = 0,
///
/// normalised so that the trapezoid rule on the grid gives int xi psi^2 dxi = 1.
/// eps = 2 M E R0^2 / hbar^2.
struct CondensateProfile {
    RadialGrid grid;
    std::vector<double> psi;
    double eigenvalue = 0.0;
    int n = 0;
    double n1d_a = 0.0;
    SolverTag solver = SolverTag::Shooting;
    double residual = 0.0;   // solver's own scaled discrete residual
    int iterations = 0;      // total Newton iterations over the continuation

    /// |psi|^2 at the grid points.
    std::vector<double> density() const;
    /// Trapezoid value of int xi psi^2 dxi.
    double norm() const;
};

struct SolverOptions {
    double tol = 1e-10;        // accepted range [1e-12, 1e-4]
    int max_newton = 60;       // per continuation step
    int rk_substeps = 4;       // RK4 steps per grid interval (shooting)
};

/// Multiple shooting: RK4 integration outward from the small-xi series on several segments,
/// joined by Newton iteration on (series amplitude, segment start values, eps) subject to
/// continuity, psi(1) = 0 and unit normalisation.  The interaction is switched on by
/// continuation from the linear (Bessel) problem.
/// Throws NonConvergence or NodeDetected.
CondensateProfile solve_profile(int n, double n1d_a, const RadialGrid& grid,
                                const SolverOptions& options = {});

/// Independent route: damped Newton on the fourth-order finite-difference discretisation with
/// a series-ratio boundary row at xi_min, psi(1) = 0 and the normalisation constraint.  The
/// reported eigenvalue is the Rayleigh quotient of the discrete operator.
CondensateProfile relax_profile(int n, double n1d_a, const RadialGrid& grid,
                                const SolverOptions& options = {});

/// d|psi|^2/dxi on the profile's grid (sixth-order differences, one-sided at the ends).
std::vector<double> density_derivative(const CondensateProfile& p);

/// Number of sign changes of psi over the grid (zero for the ground radial state).
int count_nodes(const std::vector<double>& psi);

/// Scaled residual of `p` inserted into the fourth-order finite-difference equations
/// (the relaxation discretisation).  Used to cross-check profiles from either solver.
double discretisation_residual(const CondensateProfile& p);

}  // namespace vortexem

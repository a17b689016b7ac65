#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vortexem/gp_radial.hpp"
#include "vortexem/interpolant.hpp"
#include "vortexem/quantities.hpp"

namespace vortexem {

/// Radial field intensity of the infinitely long cylinder from Gauss's law:
/// field_prefactor * |psi(xi)|^2 / xi inside, zero for xi >= 1 and on the axis (n >= 1).
/// A/m for magnetic charge, V/m for electric charge.
double h_field_infinite(const ProfileInterpolant& psi, const DerivedScenario& ds, double xi);
double h_field_infinite(const CondensateProfile& p, const DerivedScenario& ds, double xi);

struct PotentialValue {
    double value = 0.0;   // Phi / Phi0
    double error = 0.0;   // estimated absolute quadrature error
    bool ok = true;       // error <= quad_tol * |value| + quad_tol
};

struct PotentialOptions {
    double quad_tol = 1e-6;   // accepted range [1e-10, 1e-3]
    bool weighted = true;     // false: drop the |psi|^2 weight (comparison only)
};

/// Phi / Phi0 at (xi, z) (xi in units of R0, z in units of z0) for a finite cylinder of
/// aspect ratio f = R0 / z0:
///
///   int dxi' int dphi' |psi(xi')|^2 (xi' - xi cos phi') / h^2
///       * [ (1 - z) / sqrt(h^2 f^2 + (1 - z)^2) + (1 + z) / sqrt(h^2 f^2 + (1 + z)^2) ],
///   h^2 = xi^2 + xi'^2 - 2 xi xi' cos phi'.
///
/// The h -> 0 part of the bracket is integrated in closed form over phi'; the bounded
/// remainder is handled by nested adaptive Gauss-Kronrod quadrature.  Throws
/// RimSingularity at xi = 1, |z| = 1.
PotentialValue potential_at(const ProfileInterpolant& psi, double f, double xi, double z,
                            const PotentialOptions& options = {});

/// Scenario form: f from the scenario; zero when the scenario has no source (Phi0 = 0).
PotentialValue potential_at(const CondensateProfile& p, const DerivedScenario& ds, double xi, double z,
                            const PotentialOptions& options = {});

struct PotentialGridSpec {
    double xi_max = 2.0;
    double z_max = 2.0;
    std::size_t nxi = 101;
    std::size_t nz = 101;
    PotentialOptions options;
};

/// Phi / Phi0 on a uniform (xi, z) grid over [0, xi_max] x [0, z_max].
struct PotentialGrid {
    std::vector<double> xi_values;
    std::vector<double> z_values;
    std::vector<double> phi_over_phi0;   // row-major: index = i_xi * nz + i_z
    std::vector<double> error;           // per-point error estimates, same layout
    double f_aspect = 0.0;
    double quad_tol = 0.0;
    bool weighted = true;
    std::vector<std::pair<std::size_t, std::size_t>> rim_points;   // nudged to xi = 1 - 1e-6
    std::size_t failed_points = 0;

    double at(std::size_t i_xi, std::size_t i_z) const { return phi_over_phi0[i_xi * z_values.size() + i_z]; }
};

/// Fills the grid with potential_at on `workers` threads (points are independent, so the
/// result does not depend on the worker count).
PotentialGrid potential_grid(const CondensateProfile& p, const DerivedScenario& ds,
                             const PotentialGridSpec& spec = {}, unsigned workers = 1);

/// -grad Phi on the grid: centred differences inside, second-order one-sided at the edges.
/// e_xi in units of Phi0 / R0, e_z in units of Phi0 / z0; same layout as the grid.
struct FieldSamples {
    std::vector<double> e_xi;
    std::vector<double> e_z;
};
FieldSamples field_from_potential(const PotentialGrid& pg);

}  // namespace vortexem

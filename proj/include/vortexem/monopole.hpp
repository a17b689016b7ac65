#pragma once

#include <vector>

#include "vortexem/gp_radial.hpp"
#include "vortexem/quantities.hpp"

namespace vortexem {

/// Monopole charge carried by a rotating condensate.  Magnetic charge (V s) for
/// electric-dipole and susceptibility scenarios, electric charge (C) for magnetic dipoles.
struct ChargeProfile {
    RadialGrid grid;
    std::vector<double> areal_density;  // 2 pi xi rho(xi), charge / m^3
    std::vector<double> cumulative;     // Q(xi): charge inside radius xi over the full height
    DipoleKind kind = DipoleKind::ElectricDipole;
    bool magnetic = true;               // which kind of charge is sourced
    double total = 0.0;                 // Q(1)
    double coefficient = 0.0;           // Q(xi) = coefficient * |psi(xi)|^2
    double areal_prefactor = 0.0;       // areal_density = areal_prefactor * d|psi|^2/dxi
    double volume_factor = 0.0;         // 2 z0 R0^2: Q = volume_factor * int areal_density dxi
    double delta_weight = 0.0;          // |psi(0+)|^2 carried by the on-axis delta term
};

/// 2 pi xi rho(xi) on the profile grid, with the cumulative charge filled in.
/// Throws KindMismatch when the profile was solved for a different n or n1d_a.
ChargeProfile areal_density(const CondensateProfile& p, const DerivedScenario& ds);

/// Q(xi_cut) for xi_cut in [xi_min, 1]: exact at grid points, cubic Hermite in between.
/// Throws std::invalid_argument outside the grid.
double cumulative_charge(const ChargeProfile& cp, double xi_cut);

struct NeutralityReport {
    static constexpr double threshold = 1e-8;

    double delta_weight = 0.0;        // |psi(0+)|^2 relative to max |psi|^2
    double total_residual = 0.0;      // |Q(1)| relative to max |Q|
    double max_imbalance = 0.0;       // max |Q(xi) - coefficient |psi(xi)|^2| relative to max |Q|
    double psi_at_xi_min_sq = 0.0;    // raw |psi(xi_min)|^2, informational
    bool delta_ok = false;
    bool total_ok = false;
    bool imbalance_ok = false;

    bool ok() const { return delta_ok && total_ok && imbalance_ok; }
};

/// Neutrality diagnostics.  The checks are made on the dimensionless charge
/// (Q / coefficient), so they remain meaningful when the physical prefactor vanishes.
/// Requires n >= 1 (std::invalid_argument otherwise).
NeutralityReport neutrality_report(const CondensateProfile& p, const DerivedScenario& ds);

/// Polar annulus xi_inner <= xi <= xi_outer sampled with n_r radii and n_phi angles.
struct AnnulusGrid {
    double xi_inner = 0.05;
    double xi_outer = 0.95;
    int n_r = 64;
    int n_phi = 64;
};

/// Builds v x P from its Cartesian components on the annulus, takes the discrete polar
/// divergence (second-order centred differences) and compares with the closed form
/// (n hbar / M r) d(amplitude |psi|^2)/dr.  Returns max |difference| / max |closed form|
/// over the interior nodes.
double divergence_identity_check(const CondensateProfile& p, const DerivedScenario& ds,
                                 const AnnulusGrid& annulus = {});

}  // namespace vortexem

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vortexem {

/// What the constituent atoms carry. ElectricDipole and Susceptibility condensates
/// source magnetic monopole charge; MagneticDipole condensates source electric charge.
enum class DipoleKind { ElectricDipole, MagneticDipole, Susceptibility };

/// How a susceptibility scenario turns chi * E_applied into a polarisation amplitude.
///   AsPrinted: P = chi * E |psi|^2, chi numerically in C/(V m).  Reproduces the
///              reference helium estimate of ~1e-20 V s per V/m.
///   SI:        P = eps0 * chi * E |psi|^2 with dimensionless chi.
enum class SusceptibilityConvention { AsPrinted, SI };

std::string_view to_string(DipoleKind kind);
std::string_view to_string(SusceptibilityConvention convention);
DipoleKind parse_dipole_kind(std::string_view text);
SusceptibilityConvention parse_susceptibility_convention(std::string_view text);

/// Physical input of one condensate. All values SI.
struct Scenario {
    std::string name;
    DipoleKind kind = DipoleKind::ElectricDipole;
    int vortex_order = 1;
    double mass = 0.0;                      // kg
    std::optional<double> dipole;           // C m (ElectricDipole)
    std::optional<double> moment;           // A m^2 (MagneticDipole)
    std::optional<double> chi;              // see SusceptibilityConvention (Susceptibility)
    std::optional<double> applied_field;    // V/m (Susceptibility)
    SusceptibilityConvention convention = SusceptibilityConvention::AsPrinted;
    double scattering_length = 0.0;         // m
    double n1d_a = 0.0;                     // dimensionless interaction strength
    double R0 = 0.0;                        // m, cylinder radius
    double z0 = 0.0;                        // m, cylinder half-height
    std::vector<std::string> assumptions;   // free-text notes carried into manifests

    /// Throws ScenarioError when an invariant is violated.
    void validate() const;
};

/// Scenario plus geometry and the two scaling constants.
struct DerivedScenario {
    Scenario underlying;
    double n1d = 0.0;                 // 1/m
    double atom_count = 0.0;          // N = 2 z0 n1d
    double aspect = 0.0;              // f = R0 / z0
    double phi0 = 0.0;                // A (magnetic potential) or V (electric potential)
    double charge_coefficient = 0.0;  // V s (magnetic charge) or C (electric charge)

    DipoleKind kind() const { return underlying.kind; }
    int vortex_order() const { return underlying.vortex_order; }

    /// True when the condensate sources magnetic monopoles (H field, potential in A).
    bool sources_magnetic_charge() const { return kind() != DipoleKind::MagneticDipole; }

    /// mu0 for magnetic charge, eps0 for electric charge: divergence of the
    /// field intensity equals (charge density) / (this constant).
    double field_source_constant() const;

    /// Amplitude A with P(xi) = A |psi(xi)|^2.  C/m^2 for the dipole-polarised kinds; for
    /// magnetic dipoles the dual amplitude -mu0 n1d mu / (2 pi R0^2) that takes P's place.
    double polarisation_amplitude() const;

    /// 2 pi xi rho(xi) = areal_prefactor() * d|psi|^2/dxi.  Units: charge / m^3 * m.
    double areal_prefactor() const;

    /// Infinite-cylinder field intensity: field_prefactor() * |psi(xi)|^2 / xi.
    /// A/m (H) or V/m (E).
    double field_prefactor() const;

    std::string potential_unit() const { return sources_magnetic_charge() ? "A" : "V"; }
    std::string charge_unit() const { return sources_magnetic_charge() ? "V s" : "C"; }
    std::string field_unit() const { return sources_magnetic_charge() ? "A/m" : "V/m"; }
};

/// Fills n1d, N, f and the scaling constants.  Throws ScenarioError on invalid input.
DerivedScenario derive_geometry(const Scenario& s);

/// Phi0: hbar n n1d d / (8 pi^2 M R0^2) for electric dipoles, -hbar n n1d mu0 mu / (8 pi^2 M R0^2)
/// for magnetic dipoles; susceptibility replaces n1d d by 2 pi R0^2 P_amplitude.
double scaling_potential(const DerivedScenario& ds);

/// Q coefficient multiplying |psi(xi)|^2: hbar n N mu0 d / (M R0^2) (magnetic charge, V s) or
/// -hbar n N mu / (M c^2 R0^2) (electric charge, C).
double charge_coefficient(const DerivedScenario& ds);

// Built-in scenarios: "rb87", "hydrogen", "helium".
std::vector<std::string> preset_names();
Scenario preset(std::string_view name);

/// Parses the flat `key = value` scenario format.  Throws ScenarioError.
Scenario parse_scenario(std::istream& in, std::string name = "custom");
Scenario load_scenario_file(const std::string& path);

/// Preset name or path to a scenario file.
Scenario resolve_scenario(const std::string& preset_or_path);

/// Writes `s` back in the flat key-value format (SI inputs converted to the file's units).
std::string format_scenario(const Scenario& s);

}  // namespace vortexem

#pragma once

#include <numbers>

namespace vortexem {

// SI values (CODATA 2018).
struct Constants {
    static constexpr double hbar = 1.054571817e-34;          // J s
    static constexpr double mu0 = 1.25663706212e-6;          // V s / (A m)
    static constexpr double eps0 = 8.8541878128e-12;         // A s / (V m)
    static constexpr double c = 299792458.0;                 // m / s
    static constexpr double e_charge = 1.602176634e-19;      // C
    static constexpr double a_bohr = 5.29177210903e-11;      // m
    static constexpr double m_electron = 9.1093837015e-31;   // kg
    static constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

    static constexpr double debye = 3.33564095198e-30;       // C m
    static constexpr double bohr_magneton = 9.2740100783e-24;  // A m^2
    static constexpr double angstrom = 1e-10;                // m
};

inline constexpr double pi = std::numbers::pi;

}  // namespace vortexem

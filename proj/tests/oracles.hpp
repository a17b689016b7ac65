#pragma once

// Independent reference computations used only by the tests.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "vortexem/bessel.hpp"
#include "vortexem/interpolant.hpp"
#include "vortexem/radial_grid.hpp"

namespace oracle {

/// J_n(j_{n,1} xi) on the grid, scaled so that the trapezoid rule gives int xi psi^2 = 1
/// (the solvers' discrete normalisation).
inline std::vector<double> bessel_profile(int n, const vortexem::RadialGrid& grid) {
    const double j = vortexem::bessel::first_zero(n);
    std::vector<double> psi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) psi[i] = vortexem::bessel::jn(n, j * grid[i]);
    psi.back() = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double h = grid[i + 1] - grid[i];
        norm += 0.5 * h * (grid[i] * psi[i] * psi[i] + grid[i + 1] * psi[i + 1] * psi[i + 1]);
    }
    for (double& v : psi) v /= std::sqrt(norm);
    return psi;
}

/// d/dxi of bessel_profile's |psi|^2 in closed form: 2 c^2 J_n(j xi) j J_n'(j xi).
inline double bessel_density_derivative(int n, double scale, double xi) {
    const double j = vortexem::bessel::first_zero(n);
    const double x = j * xi;
    const double jn = boost::math::cyl_bessel_j(n, x);
    const double djn = boost::math::cyl_bessel_j_prime(n, x);
    return 2.0 * scale * scale * jn * j * djn;
}

/// Raw kernel of the finite-cylinder potential, integrated without any singularity
/// treatment beyond splitting the angular range near phi' = 0 and the radial range at xi.
inline double brute_force_potential(const vortexem::ProfileInterpolant& psi, double f, double xi, double z,
                                    double tol = 1e-11) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto inner = [&](double xp) {
        auto g = [&](double phi) {
            const double sh = std::sin(0.5 * phi);
            const double h2 = (xi - xp) * (xi - xp) + 4.0 * xi * xp * sh * sh;
            const double a = 1.0 - z, b = 1.0 + z;
            const double bracket = a / std::sqrt(h2 * f * f + a * a) + b / std::sqrt(h2 * f * f + b * b);
            return (xp - xi * std::cos(phi)) / h2 * bracket;
        };
        const double cuts[] = {0.0, 1e-4, 1e-3, 1e-2, 0.1, std::numbers::pi};
        double s = 0.0;
        for (int k = 0; k + 1 < 6; ++k) s += GK::integrate(g, cuts[k], cuts[k + 1], 20, tol);
        return 2.0 * psi.density(xp) * s;
    };
    const double lo = psi.xi_min();
    double total = 0.0;
    if (xi > lo && xi < 1.0) {
        total += GK::integrate(inner, lo, xi, 20, tol * 100);
        total += GK::integrate(inner, xi, 1.0, 20, tol * 100);
    } else {
        total += GK::integrate(inner, lo, 1.0, 20, tol * 100);
    }
    return total;
}

/// On the axis h = xi' for every phi', so the angular integral is trivial.
inline double axis_potential(const vortexem::ProfileInterpolant& psi, double f, double z) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto g = [&](double xp) {
        const double a = 1.0 - z, b = 1.0 + z;
        const double h2 = xp * xp;
        const double bracket = a / std::sqrt(h2 * f * f + a * a) + b / std::sqrt(h2 * f * f + b * b);
        return 2.0 * std::numbers::pi * psi.density(xp) / xp * bracket;
    };
    return GK::integrate(g, psi.xi_min(), 1.0, 20, 1e-12);
}

}  // namespace oracle

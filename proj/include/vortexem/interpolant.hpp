#pragma once

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "vortexem/gp_radial.hpp"

namespace vortexem {

/// Continuous psi(xi) from a gridded profile: C^2 cubic B-spline on the grid, the leading
/// series term psi(xi_min) (xi / xi_min)^n below xi_min, and zero outside the cylinder.
class ProfileInterpolant {
public:
    explicit ProfileInterpolant(const CondensateProfile& p);

    double psi(double xi) const;
    double density(double xi) const;             // |psi|^2
    double density_derivative(double xi) const; // d|psi|^2/dxi

    int order() const { return n_; }
    double xi_min() const { return xi_min_; }

private:
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
    int n_;
    double xi_min_;
    double psi_min_;
};

}  // namespace vortexem

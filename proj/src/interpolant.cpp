#include "vortexem/interpolant.hpp"

#include <cmath>

#include "vortexem/finite_difference.hpp"

namespace vortexem {

namespace {

boost::math::interpolators::cardinal_cubic_b_spline<double> make_spline(const CondensateProfile& p) {
    const auto slope = fd::derivative(p.psi, p.grid.spacing());
    return {p.psi.data(), p.psi.size(), p.grid.xi_min(), p.grid.spacing(), slope.front(), slope.back()};
}

}  // namespace

ProfileInterpolant::ProfileInterpolant(const CondensateProfile& p)
    : spline_(make_spline(p)), n_(p.n), xi_min_(p.grid.xi_min()), psi_min_(p.psi.front()) {}

double ProfileInterpolant::psi(double xi) const {
    if (xi >= 1.0) return 0.0;
    if (xi < xi_min_) return xi <= 0.0 ? (n_ == 0 ? psi_min_ : 0.0) : psi_min_ * std::pow(xi / xi_min_, n_);
    return spline_(xi);
}

double ProfileInterpolant::density(double xi) const {
    const double v = psi(xi);
    return v * v;
}

double ProfileInterpolant::density_derivative(double xi) const {
    if (xi >= 1.0 || xi <= 0.0) return 0.0;
    if (xi < xi_min_) return n_ == 0 ? 0.0 : 2.0 * n_ * density(xi) / xi;
    return 2.0 * spline_(xi) * spline_.prime(xi);
}

}  // namespace vortexem

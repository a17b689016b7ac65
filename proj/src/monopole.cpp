#include "vortexem/monopole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "vortexem/constants.hpp"
#include "vortexem/errors.hpp"
#include "vortexem/finite_difference.hpp"
#include "vortexem/interpolant.hpp"

namespace vortexem {

namespace {

void check_consistent(const CondensateProfile& p, const DerivedScenario& ds) {
    const Scenario& s = ds.underlying;
    if (p.n != s.vortex_order)
        throw KindMismatch("profile has n = " + std::to_string(p.n) + " but scenario '" + s.name +
                           "' has n = " + std::to_string(s.vortex_order));
    if (std::abs(p.n1d_a - s.n1d_a) > 1e-12 * std::max(1.0, std::abs(s.n1d_a)))
        throw KindMismatch("profile has n1d_a = " + std::to_string(p.n1d_a) + " but scenario '" + s.name +
                           "' has n1d_a = " + std::to_string(s.n1d_a));
}

// Weight of the on-axis delta term: the series psi ~ C xi^n vanishes on the axis for n >= 1.
double axis_weight(const CondensateProfile& p) {
    return p.n == 0 ? p.psi.front() * p.psi.front() : 0.0;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

ChargeProfile areal_density(const CondensateProfile& p, const DerivedScenario& ds) {
    check_consistent(p, ds);
    const Scenario& s = ds.underlying;
    ChargeProfile cp{p.grid, {}, {}, ds.kind(), ds.sources_magnetic_charge()};
    cp.areal_prefactor = ds.areal_prefactor();
    cp.coefficient = ds.charge_coefficient;
    cp.volume_factor = 2.0 * s.z0 * s.R0 * s.R0;
    cp.delta_weight = axis_weight(p);

    const auto du = density_derivative(p);
    cp.areal_density.resize(du.size());
    for (std::size_t i = 0; i < du.size(); ++i) cp.areal_density[i] = cp.areal_prefactor * du[i];

    // Charge enclosed at xi_min: the delta term plus the (analytically) integrated density
    // between the axis and xi_min, i.e. coefficient * |psi(xi_min)|^2 in total.
    const double start = cp.coefficient * p.psi.front() * p.psi.front();
    const auto integral = fd::cumulative_integral(cp.areal_density, p.grid.spacing());
    cp.cumulative.resize(integral.size());
    for (std::size_t i = 0; i < integral.size(); ++i) cp.cumulative[i] = start + cp.volume_factor * integral[i];
    cp.total = cp.cumulative.back();
    return cp;
}

double cumulative_charge(const ChargeProfile& cp, double xi_cut) {
    const RadialGrid& g = cp.grid;
    if (!(xi_cut >= g.xi_min() && xi_cut <= 1.0))
        throw std::invalid_argument("cumulative_charge: xi_cut outside [xi_min, 1]");
    const std::size_t i = g.cell_of(xi_cut);
    const double h = g.spacing();
    const double t = (xi_cut - g[i]) / h;
    if (t <= 0.0) return cp.cumulative[i];
    if (t >= 1.0) return cp.cumulative[i + 1];
    // dQ/dxi = volume_factor * areal_density
    const double d0 = h * cp.volume_factor * cp.areal_density[i];
    const double d1 = h * cp.volume_factor * cp.areal_density[i + 1];
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * cp.cumulative[i] + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * cp.cumulative[i + 1] + (t3 - t2) * d1;
}

NeutralityReport neutrality_report(const CondensateProfile& p, const DerivedScenario& ds) {
    check_consistent(p, ds);
    if (p.n < 1) throw std::invalid_argument("neutrality_report: requires n >= 1");
    const auto u = p.density();
    const auto du = density_derivative(p);
    auto q = fd::cumulative_integral(du, p.grid.spacing());
    for (double& v : q) v += u.front();

    NeutralityReport r;
    const double umax = max_abs(u);
    const double qmax = max_abs(q);
    r.psi_at_xi_min_sq = u.front();
    r.delta_weight = umax > 0.0 ? axis_weight(p) / umax : axis_weight(p);
    r.total_residual = qmax > 0.0 ? std::abs(q.back()) / qmax : std::abs(q.back());
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) worst = std::max(worst, std::abs(q[i] - u[i]));
    r.max_imbalance = qmax > 0.0 ? worst / qmax : worst;
    r.delta_ok = r.delta_weight < NeutralityReport::threshold;
    r.total_ok = r.total_residual < NeutralityReport::threshold;
    r.imbalance_ok = r.max_imbalance < NeutralityReport::threshold;
    return r;
}

double divergence_identity_check(const CondensateProfile& p, const DerivedScenario& ds,
                                 const AnnulusGrid& a) {
    if (!(a.xi_inner >= 0.05 && a.xi_outer > a.xi_inner && a.xi_outer <= 1.0))
        throw std::invalid_argument("annulus must satisfy 0.05 <= xi_inner < xi_outer <= 1");
    if (a.n_r < 8 || a.n_phi < 8) throw std::invalid_argument("annulus needs at least 8 x 8 nodes");
    check_consistent(p, ds);

    const Scenario& s = ds.underlying;
    const ProfileInterpolant psi(p);
    const double R0 = s.R0;
    const double swirl = s.vortex_order * Constants::hbar / s.mass;  // r * |v|
    const double amp = ds.polarisation_amplitude();

    const int nr = a.n_r, np = a.n_phi;
    const double dr = (a.xi_outer - a.xi_inner) * R0 / (nr - 1);
    const double dphi = 2.0 * std::numbers::pi / np;
    auto radius = [&](int i) { return a.xi_inner * R0 + i * dr; };

    // v = (swirl / r) phi_hat, P = amp |psi|^2 z_hat, v x P = (swirl amp |psi|^2 / r) r_hat.
    std::vector<double> fx(static_cast<std::size_t>(nr * np)), fy(fx.size());
    for (int i = 0; i < nr; ++i) {
        const double r = radius(i);
        const double fr = swirl * amp * psi.density(r / R0) / r;
        for (int j = 0; j < np; ++j) {
            const double phi = j * dphi;
            fx[static_cast<std::size_t>(i * np + j)] = fr * std::cos(phi);
            fy[static_cast<std::size_t>(i * np + j)] = fr * std::sin(phi);
        }
    }
    auto at = [&](const std::vector<double>& f, int i, int j) {
        return f[static_cast<std::size_t>(i * np + (j + np) % np)];
    };
    auto f_r = [&](int i, int j) {
        const double phi = j * dphi;
        return at(fx, i, j) * std::cos(phi) + at(fy, i, j) * std::sin(phi);
    };
    auto f_phi = [&](int i, int j) {
        const double phi = j * dphi;
        return -at(fx, i, j) * std::sin(phi) + at(fy, i, j) * std::cos(phi);
    };

    double worst = 0.0, scale = 0.0;
    for (int i = 1; i + 1 < nr; ++i) {
        const double r = radius(i);
        const double closed = swirl / r * amp * psi.density_derivative(r / R0) / R0;
        scale = std::max(scale, std::abs(closed));
        for (int j = 0; j < np; ++j) {
            const double d_rfr = (radius(i + 1) * f_r(i + 1, j) - radius(i - 1) * f_r(i - 1, j)) / (2 * dr);
            const double d_fphi = (f_phi(i, j + 1) - f_phi(i, j - 1)) / (2 * dphi);
            const double div = (d_rfr + d_fphi) / r;
            worst = std::max(worst, std::abs(div - closed));
        }
    }
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace vortexem

#include <doctest.h>

#include <cmath>

#include "vortexem/constants.hpp"
#include "vortexem/errors.hpp"
#include "vortexem/monopole.hpp"

using namespace vortexem;

namespace {

const CondensateProfile& tf_profile() {
    static const CondensateProfile p = solve_profile(1, 100.0, RadialGrid::uniform());
    return p;
}

DerivedScenario rb87() { return derive_geometry(preset("rb87")); }

}  // namespace

TEST_CASE("areal density: sign pattern and prefactor") {
    const auto ds = rb87();
    const auto cp = areal_density(tf_profile(), ds);
    CHECK(cp.magnetic);
    CHECK(cp.kind == DipoleKind::ElectricDipole);
    CHECK(cp.areal_prefactor == doctest::Approx(ds.areal_prefactor()).epsilon(1e-14));
    CHECK(cp.volume_factor * cp.areal_prefactor == doctest::Approx(ds.charge_coefficient).epsilon(1e-12));
    const auto& g = cp.grid;
    CHECK(cp.areal_density[g.cell_of(0.02)] > 0.0);
    CHECK(cp.areal_density[g.cell_of(0.98)] < 0.0);
}

TEST_CASE("cumulative charge: neutrality and telescoping") {
    const auto ds = rb87();
    const auto& p = tf_profile();
    const auto cp = areal_density(p, ds);
    double qmax = 0.0;
    for (double q : cp.cumulative) qmax = std::max(qmax, std::abs(q));
    CHECK(std::abs(cp.total) < 1e-8 * qmax);
    CHECK(cumulative_charge(cp, 1.0) == doctest::Approx(cp.total).scale(1e-12 * qmax));
    CHECK(std::abs(cp.cumulative.front()) < 1e-8 * qmax);

    const auto u = p.density();
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(cp.cumulative[i] >= -1e-8 * qmax);
    for (double xi : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        CAPTURE(xi);
        const std::size_t i = p.grid.cell_of(xi);
        CHECK(cp.cumulative[i] == doctest::Approx(cp.coefficient * u[i]).epsilon(1e-6));
    }
    // Off-grid cut via the interpolant of the profile.
    const double half = cumulative_charge(cp, 0.5);
    const std::size_t i = p.grid.cell_of(0.5);
    CHECK(half > std::min(cp.cumulative[i], cp.cumulative[i + 1]) - 1e-12 * qmax);
    CHECK(half < std::max(cp.cumulative[i], cp.cumulative[i + 1]) + 1e-12 * qmax);
    CHECK(half / ds.charge_coefficient == doctest::Approx(2.219).epsilon(2e-3));
    CHECK_THROWS(cumulative_charge(cp, 1.5));
    CHECK_THROWS(cumulative_charge(cp, 0.0));
}

TEST_CASE("n = 0 gives identically zero density") {
    Scenario s = preset("rb87");
    s.vortex_order = 0;
    const auto p = solve_profile(0, 100.0, RadialGrid::uniform());
    const auto cp = areal_density(p, derive_geometry(s));
    for (double v : cp.areal_density) CHECK(v == 0.0);
    for (double v : cp.cumulative) CHECK(v == 0.0);
    CHECK_THROWS_AS(neutrality_report(p, derive_geometry(s)), std::invalid_argument);
}

TEST_CASE("kind mismatch") {
    Scenario s = preset("rb87");
    s.n1d_a = 10.0;
    CHECK_THROWS_AS(areal_density(tf_profile(), derive_geometry(s)), KindMismatch);
    s = preset("rb87");
    s.vortex_order = 2;
    CHECK_THROWS_AS(areal_density(tf_profile(), derive_geometry(s)), KindMismatch);
}

TEST_CASE("electric and magnetic charge are duals") {
    Scenario e = preset("rb87");
    Scenario m = e;
    m.kind = DipoleKind::MagneticDipole;
    m.moment = *e.dipole / Constants::mu0;
    m.dipole.reset();
    const auto de = derive_geometry(e), dm = derive_geometry(m);
    const auto ce = areal_density(tf_profile(), de), cm = areal_density(tf_profile(), dm);
    CHECK_FALSE(cm.magnetic);
    for (std::size_t i = 0; i < ce.areal_density.size(); i += 17) {
        const double a = ce.areal_density[i] / de.field_source_constant();
        const double b = cm.areal_density[i] / dm.field_source_constant();
        CHECK(b == doctest::Approx(-a).epsilon(1e-12));
    }
}

TEST_CASE("neutrality report") {
    const auto ds = rb87();
    const auto r = neutrality_report(tf_profile(), ds);
    CHECK(r.ok());
    CHECK(r.delta_weight < 1e-12);
    CHECK(r.total_residual < 1e-8);
    CHECK(r.max_imbalance < 1e-8);

    for (int n : {1, 2})
        for (double a : {0.0, 0.1, 10.0}) {
            Scenario s = preset("rb87");
            s.vortex_order = n;
            s.n1d_a = a;
            CHECK(neutrality_report(solve_profile(n, a, RadialGrid::uniform()), derive_geometry(s)).ok());
        }

    // A profile that violates psi(1) = 0 must be caught.
    CondensateProfile bad = tf_profile();
    for (std::size_t i = 0; i < bad.psi.size(); ++i) bad.psi[i] += 0.1 * bad.grid[i];
    const auto rb = neutrality_report(bad, ds);
    CHECK_FALSE(rb.total_ok);
    CHECK_FALSE(rb.ok());
}

TEST_CASE("divergence identity") {
    const auto rb = rb87();
    const auto& p = tf_profile();
    AnnulusGrid coarse{0.05, 0.95, 41, 40}, fine{0.05, 0.95, 81, 80};

    // Weakly interacting profile: second order already on coarse grids.
    Scenario weak = preset("rb87");
    weak.n1d_a = 0.1;
    const auto pw = solve_profile(1, 0.1, RadialGrid::uniform());
    const double w1 = divergence_identity_check(pw, derive_geometry(weak), coarse);
    const double w2 = divergence_identity_check(pw, derive_geometry(weak), fine);
    CHECK(w1 < 1e-2);
    CHECK(w1 / w2 == doctest::Approx(4.0).epsilon(0.05));

    const double e1 = divergence_identity_check(p, rb, coarse);
    const double e2 = divergence_identity_check(p, rb, fine);
    CHECK(e2 < e1);

    // Constant |psi|^2: both sides vanish.
    CondensateProfile flat = p;
    std::fill(flat.psi.begin(), flat.psi.end(), 1.0);
    CHECK(divergence_identity_check(flat, rb, coarse) < 1e-6);

    Scenario h = preset("hydrogen");
    const auto dh = derive_geometry(h);
    CHECK(divergence_identity_check(p, dh, coarse) == doctest::Approx(e1).epsilon(1e-9));
    CHECK_THROWS(divergence_identity_check(p, rb, AnnulusGrid{0.0, 0.9, 40, 40}));
}

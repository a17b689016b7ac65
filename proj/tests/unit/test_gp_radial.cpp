#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vortexem/bessel.hpp"
#include "vortexem/errors.hpp"
#include "vortexem/finite_difference.hpp"
#include "vortexem/gp_radial.hpp"

using namespace vortexem;

namespace {

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const RadialGrid& grid() {
    static const RadialGrid g = RadialGrid::uniform();
    return g;
}

}  // namespace

TEST_CASE("radial grid") {
    const auto& g = grid();
    CHECK(g.size() == 2048);
    CHECK(g[0] == 1e-6);
    CHECK(g[g.size() - 1] == 1.0);
    CHECK(g.cell_of(0.5) == static_cast<std::size_t>((0.5 - 1e-6) / g.spacing()));
    CHECK(g.cell_of(2.0) == g.size() - 2);
    std::vector<double> pts(g.points().begin(), g.points().end());
    CHECK(RadialGrid::from_points(pts).spacing() == g.spacing());
    pts[10] += 1e-5;
    CHECK_THROWS_AS(RadialGrid::from_points(pts), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::uniform(10), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid::uniform(100, 0.1), std::invalid_argument);
}

TEST_CASE("Bessel limit: eigenvalues are squared first zeros for both solvers") {
    for (int n : {0, 1, 2}) {
        CAPTURE(n);
        const double j = bessel::first_zero(n);
        const auto s = solve_profile(n, 0.0, grid());
        const auto r = relax_profile(n, 0.0, grid());
        CHECK(s.eigenvalue == doctest::Approx(j * j).epsilon(1e-9));
        CHECK(std::abs(r.eigenvalue - j * j) < 1e-4);
        CHECK(s.solver == SolverTag::Shooting);
        CHECK(r.solver == SolverTag::Relaxation);
    }
    CHECK(solve_profile(0, 0.0, grid()).eigenvalue == doctest::Approx(5.7832).epsilon(1e-4));
    CHECK(solve_profile(2, 0.0, grid()).eigenvalue == doctest::Approx(26.3746).epsilon(1e-4));
}

TEST_CASE("Bessel limit: profile is the normalised J_n") {
    for (int n : {0, 1, 2}) {
        CAPTURE(n);
        const auto p = solve_profile(n, 0.0, grid());
        CHECK(linf(p.psi, oracle::bessel_profile(n, grid())) < 1e-6);
    }
}

TEST_CASE("profiles are normalised, nodeless and vanish at the wall") {
    for (double a : {0.1, 10.0, 100.0}) {
        CAPTURE(a);
        const auto p = solve_profile(1, a, grid());
        CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.psi.back() == 0.0);
        CHECK(count_nodes(p.psi) == 0);
        for (double v : p.psi) CHECK(v >= -1e-14);
    }
}

TEST_CASE("reference eigenvalues of the interacting problem") {
    struct Case {
        int n;
        double a, eps;
    };
    for (const Case c : {Case{1, 0.1, 15.9152}, Case{1, 10, 115.6008}, Case{1, 100, 891.7842},
                         Case{2, 0.1, 27.5943}, Case{2, 10, 129.5030}, Case{2, 100, 910.7666}}) {
        CAPTURE(c.n);
        CAPTURE(c.a);
        // Tabulated to four decimals.
        CHECK(std::abs(solve_profile(c.n, c.a, grid()).eigenvalue - c.eps) <= 5e-5);
    }
}

TEST_CASE("dual-solver agreement") {
    for (int n : {1, 2})
        for (double a : {0.0, 0.1, 10.0, 100.0}) {
            CAPTURE(n);
            CAPTURE(a);
            const auto s = solve_profile(n, a, grid());
            const auto r = relax_profile(n, a, grid());
            CHECK(rel_l2(s.psi, r.psi) < 1e-6);
            CHECK(s.eigenvalue == doctest::Approx(r.eigenvalue).epsilon(1e-8));
        }
}

TEST_CASE("eigenvalue increases with the interaction; profile broadens") {
    for (int n : {1, 2}) {
        double last_eps = -1.0, last_peak = 0.0, last_half = -1.0;
        for (double a : {0.0, 0.1, 10.0, 100.0}) {
            const auto p = solve_profile(n, a, grid());
            const auto u = p.density();
            const auto peak = static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin());
            const double half = u[grid().cell_of(0.5)];
            CHECK(p.eigenvalue > last_eps);
            CHECK(grid()[peak] >= last_peak);
            if (last_half >= 0.0) CHECK(half < last_half);  // the peak flattens toward |psi|^2 ~ 2
            last_eps = p.eigenvalue;
            last_peak = grid()[peak];
            last_half = half;
        }
    }
}

TEST_CASE("grid convergence of the eigenvalue") {
    const auto coarse = solve_profile(1, 100.0, RadialGrid::uniform(2048));
    const auto fine = solve_profile(1, 100.0, RadialGrid::uniform(4096));
    CHECK(std::abs(fine.eigenvalue / coarse.eigenvalue - 1.0) < 1e-6);
}

TEST_CASE("residuals") {
    SolverOptions o;
    o.tol = 1e-10;
    const auto r = relax_profile(1, 100.0, grid(), o);
    CHECK(discretisation_residual(r) < 10 * o.tol);
    const auto s = solve_profile(1, 100.0, grid(), o);
    CHECK(s.residual < o.tol);
    CHECK(s.iterations > 0);
}

TEST_CASE("density derivative") {
    CondensateProfile flat{grid(), std::vector<double>(grid().size(), 0.7)};
    for (double v : density_derivative(flat)) CHECK(v == 0.0);

    const auto p = solve_profile(1, 0.0, grid());
    const auto du = density_derivative(p);
    const auto ref = oracle::bessel_profile(1, grid());
    const double j = bessel::first_zero(1);
    const double scale = ref[grid().size() / 2] / bessel::jn(1, j * grid()[grid().size() / 2]);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid().size(); ++i)
        worst = std::max(worst, std::abs(du[i] - oracle::bessel_density_derivative(1, scale, grid()[i])));
    CHECK(worst < 1e-4);

    for (double a : {0.0, 100.0}) {
        const auto q = solve_profile(1, a, grid());
        const auto F = fd::cumulative_integral(density_derivative(q), grid().spacing());
        CHECK(std::abs(F.back()) < 1e-9);
    }
}

TEST_CASE("argument checking and failure modes") {
    SolverOptions o;
    o.tol = 1e-3;
    CHECK_THROWS_AS(solve_profile(1, 1.0, grid(), o), std::invalid_argument);
    CHECK_THROWS_AS(relax_profile(-1, 1.0, grid()), std::invalid_argument);
    CHECK_THROWS_AS(solve_profile(1, -1.0, grid()), std::invalid_argument);
    o = SolverOptions{};
    o.max_newton = 1;
    CHECK_THROWS_AS(solve_profile(1, 100.0, grid(), o), NonConvergence);
    CHECK_THROWS_AS(relax_profile(1, 100.0, grid(), o), NonConvergence);
}

TEST_CASE("node counting") {
    CHECK(count_nodes({0.0, 1.0, 2.0, 0.0}) == 0);
    CHECK(count_nodes({0.0, 1.0, -2.0, 0.0}) == 1);
    CHECK(count_nodes({1.0, -1.0, 1.0}) == 2);
}

TEST_CASE("solver tags") {
    CHECK(parse_solver_tag("shooting") == SolverTag::Shooting);
    CHECK(to_string(SolverTag::Relaxation) == "relaxation");
    CHECK_THROWS(parse_solver_tag("euler"));
}

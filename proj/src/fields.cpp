#include "vortexem/fields.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <thread>

#include "vortexem/errors.hpp"

namespace vortexem {

namespace {

constexpr double pi = std::numbers::pi;

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

// Globally adaptive 15-point Gauss-Kronrod: bisects the panel with the largest error until
// the summed error estimate is below max(abs_tol, rel_tol |I|) or the panel budget runs out.
template <class F>
Integral adaptive(const F& f, double a, double b, double abs_tol, double rel_tol, int max_panels = 400) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto eval = [&](double lo, double hi) {
        double err = 0.0;
        const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
        return Panel{lo, hi, v, err};
    };
    std::priority_queue<Panel> panels;
    Panel first = eval(a, b);
    double total = first.value, error = first.error;
    panels.push(first);
    int count = 1;
    while (error > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_panels) {
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            panels.push(worst);
            break;
        }
        const Panel left = eval(worst.a, mid), right = eval(mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    // Re-sum to shed the rounding accumulated by the running updates.
    total = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    return {total, error};
}

double sign(double s) { return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0); }

}  // namespace

double h_field_infinite(const ProfileInterpolant& psi, const DerivedScenario& ds, double xi) {
    if (!(xi >= 0.0)) throw std::invalid_argument("h_field_infinite: xi must be >= 0");
    if (xi >= 1.0 || xi == 0.0) return 0.0;
    return ds.field_prefactor() * psi.density(xi) / xi;
}

double h_field_infinite(const CondensateProfile& p, const DerivedScenario& ds, double xi) {
    return h_field_infinite(ProfileInterpolant(p), ds, xi);
}

// The bracket B(h) = sum_s s / sqrt(h^2 f^2 + s^2), s = 1 -+ z, tends to B0 = sum_s sign(s) as
// h -> 0.  Splitting B = B0 + (B - B0):
//   * B0 times the phi'-integral of (xi' - xi cos phi') / h^2, which is 2 pi / xi' for xi' > xi
//     and 0 for xi' < xi, leaves a one-dimensional integral;
//   * (B - B0) / h^2 = -sum_s sign(s) f^2 / (q (q + |s|)), q = sqrt(h^2 f^2 + s^2), is bounded
//     away from the rim and free of cancellation.
PotentialValue potential_at(const ProfileInterpolant& psi, double f, double xi, double z,
                            const PotentialOptions& o) {
    if (!(o.quad_tol >= 1e-10 && o.quad_tol <= 1e-3))
        throw std::invalid_argument("quad_tol must lie in [1e-10, 1e-3]");
    if (!(xi >= 0.0) || !std::isfinite(xi) || !std::isfinite(z))
        throw std::invalid_argument("potential_at: need finite xi >= 0 and finite z");
    if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("potential_at: aspect ratio must be > 0");
    if (xi == 1.0 && std::abs(z) == 1.0)
        throw RimSingularity("potential_at: (xi, z) lies on the rim xi = 1, |z| = 1");

    const double lo = psi.xi_min();
    auto weight = [&](double x) { return o.weighted ? psi.density(x) : 1.0; };
    const double s_top = 1.0 - z, s_bottom = 1.0 + z;
    const double b0 = sign(s_top) + sign(s_bottom);
    const double f2 = f * f;

    Integral main;
    if (b0 != 0.0 && xi < 1.0) {
        main = adaptive([&](double x) { return weight(x) / x; }, std::max(xi, lo), 1.0, 0.05 * o.quad_tol,
                        0.05 * o.quad_tol);
        main.value *= 2.0 * pi * b0;
        main.error *= 2.0 * pi * std::abs(b0);
    }

    double inner_error = 0.0;
    auto remainder = [&](double xp) {
        const double w = weight(xp);
        if (w == 0.0) return 0.0;
        auto integrand = [&](double phi) {
            const double sh = std::sin(0.5 * phi);
            const double h2 = (xi - xp) * (xi - xp) + 4.0 * xi * xp * sh * sh;
            double sum = 0.0;
            for (double s : {s_top, s_bottom}) {
                if (s == 0.0) continue;
                const double q = std::sqrt(h2 * f2 + s * s);
                sum -= sign(s) * f2 / (q * (q + std::abs(s)));
            }
            return (xp - xi * std::cos(phi)) * sum;
        };
        const Integral in = adaptive(integrand, 0.0, pi, 0.02 * o.quad_tol, 0.02 * o.quad_tol);
        inner_error = std::max(inner_error, 2.0 * std::abs(w) * in.error);
        return 2.0 * w * in.value;
    };
    Integral rest;
    for (auto [a, b] : {std::pair{lo, std::clamp(xi, lo, 1.0)}, std::pair{std::clamp(xi, lo, 1.0), 1.0}}) {
        if (b <= a) continue;
        const Integral part = adaptive(remainder, a, b, 0.05 * o.quad_tol, 0.05 * o.quad_tol);
        rest.value += part.value;
        rest.error += part.error;
    }

    PotentialValue out;
    out.value = main.value + rest.value;
    out.error = main.error + rest.error + inner_error * (1.0 - lo);
    out.ok = std::isfinite(out.value) && out.error <= o.quad_tol * std::abs(out.value) + o.quad_tol;
    return out;
}

PotentialValue potential_at(const CondensateProfile& p, const DerivedScenario& ds, double xi, double z,
                            const PotentialOptions& options) {
    if (ds.phi0 == 0.0) return {};
    return potential_at(ProfileInterpolant(p), ds.aspect, xi, z, options);
}

PotentialGrid potential_grid(const CondensateProfile& p, const DerivedScenario& ds,
                             const PotentialGridSpec& spec, unsigned workers) {
    if (spec.nxi < 16 || spec.nz < 16) throw std::invalid_argument("potential_grid: nxi and nz must be >= 16");
    if (!(spec.xi_max >= 1.0) || !(spec.z_max > 0.0))
        throw std::invalid_argument("potential_grid: need xi_max >= 1 and z_max > 0");
    PotentialGrid g;
    g.f_aspect = ds.aspect;
    g.quad_tol = spec.options.quad_tol;
    g.weighted = spec.options.weighted;
    g.xi_values.resize(spec.nxi);
    g.z_values.resize(spec.nz);
    for (std::size_t i = 0; i < spec.nxi; ++i)
        g.xi_values[i] = spec.xi_max * static_cast<double>(i) / static_cast<double>(spec.nxi - 1);
    for (std::size_t j = 0; j < spec.nz; ++j)
        g.z_values[j] = spec.z_max * static_cast<double>(j) / static_cast<double>(spec.nz - 1);
    const std::size_t total = spec.nxi * spec.nz;
    g.phi_over_phi0.assign(total, 0.0);
    g.error.assign(total, 0.0);

    for (std::size_t i = 0; i < spec.nxi; ++i)
        for (std::size_t j = 0; j < spec.nz; ++j)
            if (g.xi_values[i] == 1.0 && std::abs(g.z_values[j]) == 1.0) g.rim_points.emplace_back(i, j);
    if (ds.phi0 == 0.0) return g;

    const ProfileInterpolant psi(p);
    std::vector<char> failed(total, 0);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t k = next++; k < total; k = next++) {
            const std::size_t i = k / spec.nz, j = k % spec.nz;
            double xi = g.xi_values[i];
            const double z = g.z_values[j];
            if (xi == 1.0 && std::abs(z) == 1.0) xi -= 1e-6;
            const PotentialValue v = potential_at(psi, ds.aspect, xi, z, spec.options);
            g.phi_over_phi0[k] = v.value;
            g.error[k] = v.error;
            failed[k] = v.ok ? 0 : 1;
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    g.failed_points = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    return g;
}

FieldSamples field_from_potential(const PotentialGrid& pg) {
    const std::size_t nx = pg.xi_values.size(), nz = pg.z_values.size();
    if (nx < 3 || nz < 3) throw std::invalid_argument("field_from_potential: grid too small");
    const double dx = pg.xi_values[1] - pg.xi_values[0];
    const double dz = pg.z_values[1] - pg.z_values[0];
    for (std::size_t i = 1; i < nx; ++i)
        if (std::abs(pg.xi_values[i] - pg.xi_values[i - 1] - dx) > 1e-9 * std::abs(dx))
            throw std::invalid_argument("field_from_potential: xi spacing not uniform");
    for (std::size_t j = 1; j < nz; ++j)
        if (std::abs(pg.z_values[j] - pg.z_values[j - 1] - dz) > 1e-9 * std::abs(dz))
            throw std::invalid_argument("field_from_potential: z spacing not uniform");

    auto phi = [&](std::size_t i, std::size_t j) { return pg.phi_over_phi0[i * nz + j]; };
    // Second-order derivative along one axis at index k of m samples read through get(k).
    auto diff = [](auto get, std::size_t k, std::size_t m, double h) {
        if (k == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
        if (k + 1 == m) return (3.0 * get(m - 1) - 4.0 * get(m - 2) + get(m - 3)) / (2.0 * h);
        return (get(k + 1) - get(k - 1)) / (2.0 * h);
    };
    FieldSamples out;
    out.e_xi.resize(nx * nz);
    out.e_z.resize(nx * nz);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nz; ++j) {
            out.e_xi[i * nz + j] = -diff([&](std::size_t k) { return phi(k, j); }, i, nx, dx);
            out.e_z[i * nz + j] = -diff([&](std::size_t k) { return phi(i, k); }, j, nz, dz);
        }
    }
    return out;
}

}  // namespace vortexem

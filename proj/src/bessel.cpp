#include "vortexem/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace vortexem::bessel {

namespace {

constexpr double series_limit = 12.0;

double ascending_series(int n, double x) {
    using ld = long double;
    const ld half = static_cast<ld>(x) / 2;
    ld term = 1;
    for (int k = 1; k <= n; ++k) term *= half / k;
    ld sum = term;
    const ld q = half * half;
    for (int k = 0; k < 200; ++k) {
        term *= -q / ((k + 1) * static_cast<ld>(k + n + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L) break;
    }
    return static_cast<double>(sum);
}

// Miller's algorithm normalised with J0 + 2 (J2 + J4 + ...) = 1.
double backward_recurrence(int n, double x) {
    const double big = 1e250;
    const double top = std::max<double>(n, x);
    int m = 2 * ((static_cast<int>(top) + 30 + static_cast<int>(std::sqrt(60.0 * top))) / 2);
    double next = 0.0;  // J_{k+1}
    double cur = 1e-300;  // J_k
    double result = 0.0;
    double norm = 0.0;
    for (int k = m; k > 0; --k) {
        const double prev = 2.0 * k / x * cur - next;  // J_{k-1}
        next = cur;
        cur = prev;
        if (std::fabs(cur) > big) {
            cur /= big;
            next /= big;
            result /= big;
            norm /= big;
        }
        if (k - 1 == n) result = cur;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    }
    norm += cur;  // J_0
    return result / norm;
}

}  // namespace

double jn(int n, double x) {
    if (n < 0) throw std::invalid_argument("bessel::jn: order must be >= 0");
    if (!std::isfinite(x)) throw std::invalid_argument("bessel::jn: argument must be finite");
    const double sign = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    x = std::fabs(x);
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return sign * (x <= series_limit ? ascending_series(n, x) : backward_recurrence(n, x));
}

double first_zero(int n, double tol) {
    if (n < 0) throw std::invalid_argument("bessel::first_zero: order must be >= 0");
    // J_n is positive on (0, j_{n,1}); j_{n,1} > n.
    const double step = 0.05;
    double lo = std::max(static_cast<double>(n), step);
    double flo = jn(n, lo);
    double hi = lo + step;
    while (jn(n, hi) > 0.0) {
        lo = hi;
        hi += step;
    }
    flo = jn(n, lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = jn(n, mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace vortexem::bessel

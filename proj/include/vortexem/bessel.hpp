#pragma once

namespace vortexem::bessel {

/// J_n(x) for integer n >= 0: ascending series (extended precision) for |x| <= 12,
/// normalised backward recurrence beyond.  Absolute accuracy ~1e-13.
double jn(int n, double x);

/// First positive zero j_{n,1} of J_n, by sign-change scan and bisection of jn().
double first_zero(int n, double tol = 1e-13);

}  // namespace vortexem::bessel

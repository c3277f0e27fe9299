#pragma once

namespace pulselab::num {

/// Bessel function J1 for x >= 0.
///
/// Power series below x = 16, Hankel asymptotic expansion beyond, both
/// accumulated in extended precision.  Absolute error is below 1e-13 on
/// [0, 1e3].  Negative or non-finite arguments are rejected.
double bessel_j1(double x);

}  // namespace pulselab::num

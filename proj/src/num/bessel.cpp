#include "pulselab/num/bessel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pulselab::num {

namespace {

// J1(x) = (x/2) sum_k (-x^2/4)^k / (k! (k+1)!)
// The series is entire; below the switch point the largest term stays small
// enough that extended precision keeps the cancellation error under 1e-15.
long double j1_series(long double x) {
    const long double q = x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + 1));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 4) break;
    }
    return (x / 2.0L) * sum;
}

// Hankel expansion: J1(x) = Re[ sqrt(2/(pi x)) e^{i(x - 3pi/4)} S ],
// S = sum_m a_m i^m / x^m, a_m = a_{m-1} (mu - (2m-1)^2)/(8m), mu = 4.
// Truncated at the smallest term; for x >= 16 that floor is ~1e-15.
long double j1_asymptotic(long double x) {
    const long double mu = 4.0L;
    std::complex<long double> s(1.0L, 0.0L);
    std::complex<long double> ipow(0.0L, 1.0L);
    long double a = 1.0L;
    long double inv_xm = 1.0L;
    const long double inv_x = 1.0L / x;
    long double prev = 1e30L;
    for (int m = 1; m < 40; ++m) {
        const long double odd = 2.0L * m - 1.0L;
        a *= (mu - odd * odd) / (8.0L * m);
        inv_xm *= inv_x;
        const long double mag = std::fabs(a) * inv_xm;
        if (mag >= prev) break;  // asymptotic series turned around
        s += ipow * (a * inv_xm);
        ipow *= std::complex<long double>(0.0L, 1.0L);
        if (mag < 1e-21L) break;
        prev = mag;
    }
    const long double chi = x - 3.0L * M_PIl / 4.0L;
    const std::complex<long double> phase(std::cos(chi), std::sin(chi));
    const long double amp = std::sqrt(2.0L / (M_PIl * x));
    return amp * (phase * s).real();
}

}  // namespace

double bessel_j1(double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("bessel_j1: argument must be finite and >= 0");
    const long double xl = static_cast<long double>(x);
    if (x < 16.0) return static_cast<double>(j1_series(xl));
    return static_cast<double>(j1_asymptotic(xl));
}

}  // namespace pulselab::num

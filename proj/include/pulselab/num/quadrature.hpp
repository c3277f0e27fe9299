#pragma once

#include <complex>
#include <functional>
#include <string>

#include "pulselab/num/sampled_function.hpp"
#include "pulselab/num/tolerance.hpp"

namespace pulselab::num {

struct QuadResult {
    std::complex<double> value{};
    double error_estimate = 0.0;
    bool converged = false;
    std::string message;
    std::size_t evaluations = 0;
};

/// Computes  integral_a^b  f(t) exp(i q t) dt  for a smooth envelope f and
/// carrier frequency q, by composite Gauss-Legendre panels accumulated in
/// extended precision.  Panels never exceed half a carrier period and are
/// halved until two refinement levels agree to tol.  The envelope should
/// have decayed at the interval ends; a warning is attached otherwise.
QuadResult quad_oscillatory(const std::function<std::complex<double>(double)>& envelope,
                            double carrier_freq, double a, double b,
                            const Tolerance& tol = {});

/// Sampled-envelope overload over the full sampled span.  Rejects inputs
/// with fewer than 8 samples per carrier period (Nyquist guard); the
/// exception message carries the required density.
QuadResult quad_oscillatory(const SampledFunctionC& envelope, double carrier_freq,
                            const Tolerance& tol = {});

}  // namespace pulselab::num

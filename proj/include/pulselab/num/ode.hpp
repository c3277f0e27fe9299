#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pulselab/num/sampled_function.hpp"
#include "pulselab/num/tolerance.hpp"

namespace pulselab::num {

using Complex = std::complex<double>;

/// Result of integrating d^2A/dT^2 + Omega^2(T) A = 0.
///
/// Carries the endpoint state plus a dense-output record so the trajectory
/// can be queried anywhere inside the integration span.
struct OscillatorSolution {
    Complex value{};       // A(t_end)
    Complex derivative{};  // A'(t_end)
    bool converged = false;
    std::string message;
    double t_start = 0.0, t_end = 0.0;
    std::size_t rhs_evaluations = 0;
    std::size_t steps_accepted = 0;

    struct Step {
        double t, h;
        Eigen::Vector2cd r1, r2, r3, r4, r5;  // dense-output coefficients
    };
    std::vector<Step> steps;

    /// Dense output: (A, A') at any T inside [t_start, t_end].
    std::pair<Complex, Complex> at(double t) const;
};

/// Adaptive Dormand-Prince 5(4) integration of the oscillator equation.
/// omega_sq must be real-valued, finite and bounded on the span.
OscillatorSolution integrate_oscillator(const std::function<double(double)>& omega_sq,
                                        double t_start, double t_end,
                                        Complex value0, Complex derivative0,
                                        const Tolerance& tol = {});

/// Sampled-potential overload; the samples are validated and interpolated
/// with the cubic spline.  The span must lie inside the sampled range.
OscillatorSolution integrate_oscillator(const SampledFunctionD& omega_sq,
                                        double t_start, double t_end,
                                        Complex value0, Complex derivative0,
                                        const Tolerance& tol = {});

}  // namespace pulselab::num

#include "pulselab/num/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pulselab::num {

namespace {

using Vec = Eigen::Vector2cd;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients (Hairer, Norsett, Wanner)
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double comp_norm(const Complex& v) { return std::abs(v); }

}  // namespace

std::pair<Complex, Complex> OscillatorSolution::at(double t) const {
    if (steps.empty()) return {value, derivative};
    const double lo = std::min(t_start, t_end), hi = std::max(t_start, t_end);
    if (t < lo - 1e-12 || t > hi + 1e-12)
        throw std::invalid_argument("OscillatorSolution::at: query outside integration span");
    // steps are stored in integration order; binary search on signed position
    const double dir = (t_end >= t_start) ? 1.0 : -1.0;
    std::size_t lo_i = 0, hi_i = steps.size() - 1;
    while (hi_i > lo_i) {
        const std::size_t mid = (lo_i + hi_i) / 2;
        const double end_of_mid = steps[mid].t + steps[mid].h;
        if (dir * (t - end_of_mid) > 0) lo_i = mid + 1; else hi_i = mid;
    }
    const Step& s = steps[lo_i];
    const double th = (t - s.t) / s.h;
    const double th1 = 1.0 - th;
    Vec y = s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
    return {y[0], y[1]};
}

OscillatorSolution integrate_oscillator(const std::function<double(double)>& omega_sq,
                                        double t_start, double t_end,
                                        Complex value0, Complex derivative0,
                                        const Tolerance& tol) {
    tol.validate();
    OscillatorSolution out;
    out.t_start = t_start;
    out.t_end = t_end;

    if (!std::isfinite(t_start) || !std::isfinite(t_end))
        throw std::invalid_argument("integrate_oscillator: span must be finite");

    auto rhs = [&](double t, const Vec& y, Vec& dy) {
        const double w2 = omega_sq(t);
        if (!std::isfinite(w2))
            throw std::invalid_argument("integrate_oscillator: non-finite Omega^2 sample");
        dy[0] = y[1];
        dy[1] = -w2 * y[0];
        ++out.rhs_evaluations;
    };

    Vec y;
    y << value0, derivative0;
    double t = t_start;
    const double span = t_end - t_start;
    if (span == 0.0) {
        out.value = value0;
        out.derivative = derivative0;
        out.converged = true;
        return out;
    }
    const double dir = span > 0 ? 1.0 : -1.0;

    // initial step from the local frequency scale
    const double w0 = std::sqrt(std::max(std::abs(omega_sq(t_start)), 1e-30));
    double h = dir * std::min(std::abs(span), 0.1 / w0);

    Vec k1, k2, k3, k4, k5, k6, k7;
    rhs(t, y, k1);

    const std::size_t max_steps = 40'000'000;
    std::size_t nsteps = 0;
    out.steps.reserve(1024);

    while (dir * (t_end - t) > 0) {
        if (++nsteps > max_steps) {
            out.message = "step budget exhausted";
            return out;
        }
        if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
            out.message = "step-size underflow (convergence failure)";
            return out;
        }
        if (dir * (t + h - t_end) > 0) h = t_end - t;

        Vec yt;
        yt = y + h * (a21 * k1);
        rhs(t + c2 * h, yt, k2);
        yt = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, yt, k3);
        yt = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, yt, k4);
        yt = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, yt, k5);
        yt = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, yt, k6);
        Vec y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, y1, k7);  // FSAL

        Vec err_v = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double err = 0.0;
        // headroom factor keeps the accumulated drift of conserved
        // quantities (Wronskian, |alpha|^2-|beta|^2) within ~10x tol
        constexpr double kHeadroom = 0.125;
        for (int i = 0; i < 2; ++i) {
            const double sc =
                kHeadroom * (tol.abs + tol.rel * std::max(comp_norm(y[i]), comp_norm(y1[i])));
            const double e = comp_norm(err_v[i]) / sc;
            err += e * e;
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            // accept; record dense-output coefficients
            OscillatorSolution::Step st;
            st.t = t;
            st.h = h;
            const Vec dy = y1 - y;
            st.r1 = y;
            st.r2 = dy;
            st.r3 = h * k1 - dy;
            st.r4 = dy - h * k7 - st.r3;
            st.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            out.steps.push_back(st);

            t += h;
            y = y1;
            k1 = k7;
            ++out.steps_accepted;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 6.0);
        h *= fac;
    }

    out.value = y[0];
    out.derivative = y[1];
    out.converged = true;
    return out;
}

OscillatorSolution integrate_oscillator(const SampledFunctionD& omega_sq,
                                        double t_start, double t_end,
                                        Complex value0, Complex derivative0,
                                        const Tolerance& tol) {
    const double lo = std::min(t_start, t_end), hi = std::max(t_start, t_end);
    if (lo < omega_sq.front() - 1e-9 || hi > omega_sq.back() + 1e-9)
        throw std::invalid_argument("integrate_oscillator: span outside sampled potential");
    return integrate_oscillator([&](double t) { return omega_sq(t); },
                                t_start, t_end, value0, derivative0, tol);
}

}  // namespace pulselab::num

#include "pulselab/num/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace pulselab::num {

namespace {

using CL = std::complex<long double>;

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr int kOrder = 16;
constexpr long double kNodes[kOrder / 2] = {
    0.0950125098376374401853193L, 0.2816035507792589132304605L,
    0.4580167776572273863424194L, 0.6178762444026437484466718L,
    0.7554044083550030338951012L, 0.8656312023878317438804679L,
    0.9445750230732325760779884L, 0.9894009349916499325961542L};
constexpr long double kWeights[kOrder / 2] = {
    0.1894506104550684962853967L, 0.1826034150449235888667637L,
    0.1691565193950025381893121L, 0.1495959888165767320815017L,
    0.1246289712555338720524763L, 0.0951585116824927848099251L,
    0.0622535239386478928628438L, 0.0271524594117540948517806L};

CL phase(long double x) { return CL(std::cos(x), std::sin(x)); }

CL integrate_panels(const std::function<std::complex<double>(double)>& f,
                    long double q, long double a, long double b,
                    std::size_t n_panels, std::size_t& evals) {
    const long double h = (b - a) / static_cast<long double>(n_panels);
    CL total(0.0L, 0.0L);
    for (std::size_t p = 0; p < n_panels; ++p) {
        const long double mid = a + (static_cast<long double>(p) + 0.5L) * h;
        const long double half = h / 2.0L;
        CL acc(0.0L, 0.0L);
        for (int i = 0; i < kOrder / 2; ++i) {
            const long double xp = mid + half * kNodes[i];
            const long double xm = mid - half * kNodes[i];
            const std::complex<double> fp = f(static_cast<double>(xp));
            const std::complex<double> fm = f(static_cast<double>(xm));
            acc += kWeights[i] * (CL(fp.real(), fp.imag()) * phase(q * xp) +
                                  CL(fm.real(), fm.imag()) * phase(q * xm));
            evals += 2;
        }
        total += acc * half;
    }
    return total;
}

}  // namespace

QuadResult quad_oscillatory(const std::function<std::complex<double>(double)>& envelope,
                            double carrier_freq, double a, double b,
                            const Tolerance& tol) {
    tol.validate();
    QuadResult out;
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw std::invalid_argument("quad_oscillatory: interval must be finite");
    if (a == b) {
        out.converged = true;
        return out;
    }

    const long double q = carrier_freq;
    const long double len = std::fabs(static_cast<long double>(b) - a);
    // panel cap: half a carrier period, at least 8 panels over the interval
    const long double period = (q != 0.0L) ? 2.0L * M_PIl / std::fabs(q)
                                           : std::numeric_limits<long double>::infinity();
    std::size_t n0 = 8;
    if (std::isfinite(static_cast<double>(period)))
        n0 = std::max<std::size_t>(n0, static_cast<std::size_t>(std::ceil(len / (period / 2.0L))));

    // endpoint-decay check (spot-sample the envelope for its scale)
    double fmax = 0.0;
    for (int i = 0; i <= 32; ++i) {
        const double x = a + (b - a) * i / 32.0;
        fmax = std::max(fmax, std::abs(envelope(x)));
    }
    out.evaluations += 33;
    const double fa = std::abs(envelope(a)), fb = std::abs(envelope(b));
    if (fmax > 0.0 && std::max(fa, fb) > 1e-8 * fmax)
        out.message = "warning: envelope has not decayed at interval ends";

    // refinement below the extended-precision roundoff of the raw sum is
    // meaningless; stop there even if the requested tolerance is tighter
    const long double floor_est =
        8.0L * std::numeric_limits<long double>::epsilon() * len * std::max(fmax, 1e-300);

    CL prev = integrate_panels(envelope, q, a, b, n0, out.evaluations);
    std::size_t n = n0;
    for (int level = 0; level < 14; ++level) {
        n *= 2;
        const CL cur = integrate_panels(envelope, q, a, b, n, out.evaluations);
        const long double diff = std::abs(cur - prev);
        const long double target = std::max<long double>(
            floor_est, std::max<long double>(tol.abs, tol.rel * std::abs(cur)));
        prev = cur;
        if (diff <= target) {
            out.value = std::complex<double>(static_cast<double>(cur.real()),
                                             static_cast<double>(cur.imag()));
            out.error_estimate = static_cast<double>(diff);
            out.converged = true;
            return out;
        }
    }
    out.value = std::complex<double>(static_cast<double>(prev.real()),
                                     static_cast<double>(prev.imag()));
    out.error_estimate = std::numeric_limits<double>::quiet_NaN();
    out.converged = false;
    if (out.message.empty()) out.message = "refinement limit reached without convergence";
    return out;
}

QuadResult quad_oscillatory(const SampledFunctionC& envelope, double carrier_freq,
                            const Tolerance& tol) {
    const double period = (carrier_freq != 0.0) ? 2.0 * M_PI / std::abs(carrier_freq)
                                                : std::numeric_limits<double>::infinity();
    const double spacing = envelope.min_spacing();
    if (std::isfinite(period) && spacing > period / 8.0) {
        std::ostringstream msg;
        msg << "quad_oscillatory: carrier under-resolved; sample spacing " << spacing
            << " exceeds period/8 = " << period / 8.0
            << " (need >= 8 samples per carrier period)";
        throw std::invalid_argument(msg.str());
    }
    return quad_oscillatory([&](double t) { return envelope(t); }, carrier_freq,
                            envelope.front(), envelope.back(), tol);
}

}  // namespace pulselab::num

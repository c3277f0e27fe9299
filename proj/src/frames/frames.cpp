#include "pulselab/frames/frames.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace pulselab::frames {

namespace {

// 12-point Gauss-Legendre on [-1, 1]; the coordinate integrands are smooth
// and non-oscillatory, so doubling panels converges fast.
constexpr int kHalf = 6;
constexpr double kN[kHalf] = {0.1252334085114689154724414, 0.3678314989981801937526915,
                              0.5873179542866174472967024, 0.7699026741943046870368938,
                              0.9041172563704748566784659, 0.9815606342467192506905491};
constexpr double kW[kHalf] = {0.2491470458134027850005624, 0.2334925365383548087608499,
                              0.2031674267230659217490645, 0.1600783285433462263346525,
                              0.1069393259953184309602547, 0.0471753363865118271946160};

double gauss_panels(const std::function<double(double)>& f, double a, double b, int n_panels) {
    const double h = (b - a) / n_panels;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < kHalf; ++i)
            acc += kW[i] * (f(mid + half * kN[i]) + f(mid - half * kN[i]));
        total += acc * half;
    }
    return total;
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b) {
    if (a == b) return 0.0;
    int n = 8;
    double prev = gauss_panels(f, a, b, n);
    for (int level = 0; level < 12; ++level) {
        n *= 2;
        const double cur = gauss_panels(f, a, b, n);
        if (std::abs(cur - prev) <= 1e-14 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// integral_0^tau g(n(tau')) dtau' with the profile constant outside its
// support; the flat stretches are handled in closed form.
double profile_integral(const PulseKinematics& kin, double tau,
                        const std::function<double(double)>& g_of_n) {
    const double c = kin.n_of_tau.center();
    const double w = kin.n_of_tau.support_halfwidth();
    const double lo = c - w, hi = c + w;
    auto integrand = [&](double t) { return g_of_n(kin.n_of_tau(t)); };
    const double g_start = g_of_n(kin.n_of_tau.asymptote_start());
    const double g_end = g_of_n(kin.n_of_tau.asymptote_end());

    auto cum = [&](double t) -> double {  // integral from lo to t, t >= lo
        if (t <= lo) return g_start * (t - lo);
        if (t <= hi) return integrate_smooth(integrand, lo, t);
        return integrate_smooth(integrand, lo, hi) + g_end * (t - hi);
    };
    auto signed_cum = [&](double t) -> double {
        if (t >= lo) return cum(t);
        return g_start * (t - lo);
    };
    return signed_cum(tau) - signed_cum(0.0);
}

}  // namespace

RegularityFactor regularity_factor(double n, double v) {
    if (!(n > 0.0) || !(v > 0.0))
        throw std::invalid_argument("regularity_factor: n and v must be > 0");
    const double f = n * n * v * v;
    Regime r = Regime::Critical;
    if (f > 1.0) r = Regime::Supercritical;
    else if (f < 1.0) r = Regime::Subcritical;
    return {f, r};
}

void PulseKinematics::require_regular() const {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument("PulseKinematics: v must lie in (0, 1)");
    const double c = n_of_tau.center();
    const double w = n_of_tau.support_halfwidth();
    const int kScan = 2001;
    double bad_lo = 0.0, bad_hi = 0.0;
    bool bad = false;
    for (int i = 0; i < kScan; ++i) {
        const double tau = c - w + 2.0 * w * i / (kScan - 1);
        const double n = n_of_tau(tau);
        if (!(n * n * v * v > 1.0)) {
            if (!bad) { bad_lo = tau; bad = true; }
            bad_hi = tau;
        }
    }
    const double n_inf = n_of_tau.asymptote_start();
    if (!(n_inf * n_inf * v * v > 1.0)) { bad = true; bad_lo = -w; bad_hi = w; }
    if (bad) {
        std::ostringstream msg;
        msg << "regularity violated (n^2 v^2 <= 1) on tau in [" << bad_lo << ", " << bad_hi << "]";
        throw std::domain_error(msg.str());
    }
}

ComovingCoords comoving_coords(double t, double z, const PulseKinematics& kin) {
    kin.require_regular();
    const double tau = t - z / kin.v;
    const double v = kin.v;
    const double shift = profile_integral(kin, tau, [v](double n) {
        return v / (v * v * n * n - 1.0);
    });
    return {tau, z - shift};
}

LabCoords inverse_comoving(double tau, double rho, const PulseKinematics& kin) {
    kin.require_regular();
    const double v = kin.v;
    const double shift = profile_integral(kin, tau, [v](double n) {
        return v / (v * v * n * n - 1.0);
    });
    const double z = rho + shift;
    return {tau + z / v, z};
}

double oscillator_time(double tau, const PulseKinematics& kin, Polarization pol) {
    kin.require_regular();
    const double v = kin.v;
    if (pol == Polarization::A)
        return profile_integral(kin, tau, [v](double n) {
            return v * v / (n * n * v * v - 1.0);
        });
    return profile_integral(kin, tau, [v](double n) {
        return n * n * v * v / (n * n * v * v - 1.0);
    });
}

double oscillator_time_rate(double tau, const PulseKinematics& kin, Polarization pol) {
    const double v = kin.v;
    const double n = kin.n_of_tau(tau);
    const double g = n * n * v * v - 1.0;
    if (!(g > 0.0)) throw std::domain_error("oscillator_time_rate: regularity violated");
    return pol == Polarization::A ? v * v / g : n * n * v * v / g;
}

HubblePair hubble_parameters(const PulseKinematics& kin, int samples) {
    const double v = kin.v;
    const double c = kin.n_of_tau.center();
    const double w = kin.n_of_tau.support_halfwidth(1e-12);
    Eigen::ArrayXd taus(samples), hz(samples), hx(samples);
    for (int i = 0; i < samples; ++i) {
        const double tau = c - w + 2.0 * w * i / (samples - 1);
        const double n = kin.n_of_tau(tau);
        const double dln = kin.n_of_tau.derivative(tau) / n;
        const double f = n * n * v * v;
        taus[i] = tau;
        hx[i] = dln;
        hz[i] = f / (f - 1.0) * dln;
    }
    return {num::SampledFunctionD(taus, hz), num::SampledFunctionD(taus, hx)};
}

LabMode lab_mode(double Omega0, double kappa, double n0, double v, Polarization pol) {
    const double g = n0 * n0 * v * v - 1.0;
    if (!(g > 0.0)) throw std::domain_error("lab_mode: requires n0^2 v^2 > 1");
    if (pol == Polarization::A)
        return {(v * v * Omega0 + v * kappa) / g, (v * Omega0 + n0 * n0 * v * v * kappa) / g};
    return {(n0 * n0 * v * v * Omega0 + v * kappa) / g,
            (n0 * n0 * v * Omega0 + n0 * n0 * v * v * kappa) / g};
}

std::pair<double, double> lab_mode_inverse(const LabMode& lab, double n0, double v,
                                           Polarization pol) {
    const double g = n0 * n0 * v * v - 1.0;
    Eigen::Matrix2d M;
    if (pol == Polarization::A)
        M << v * v / g, v / g, v / g, n0 * n0 * v * v / g;
    else
        M << n0 * n0 * v * v / g, v / g, n0 * n0 * v / g, n0 * n0 * v * v / g;
    const Eigen::Vector2d sol = M.partialPivLu().solve(Eigen::Vector2d(lab.omega, lab.k_z));
    return {sol[0], sol[1]};
}

ComovingCoords filament_boost(double t, double z, double v, double n0) {
    const double g = n0 * n0 * v * v - 1.0;
    if (!(g > 0.0)) throw std::domain_error("filament_boost: requires n0^2 v^2 > 1");
    const double s = std::sqrt(g);
    return {n0 * v * (t - z / v) / s, (n0 * n0 * v * z - t) / s};
}

double ds2_A(double n, double dt, double dx, double dz) {
    return dt * dt - n * n * (dx * dx + dz * dz);
}

double ds2_Lambda(double n, double dt, double dx, double dz) {
    const double n4 = n * n * n * n;
    return ds2_A(n, dt, dx, dz) / n4;
}

NullFlags null_cone_check(double n, double dt, double dx, double dz) {
    if (!(n > 0.0)) throw std::invalid_argument("null_cone_check: n must be > 0");
    const double scale_A = dt * dt + n * n * (dx * dx + dz * dz);
    const double a = ds2_A(n, dt, dx, dz);
    const double l = ds2_Lambda(n, dt, dx, dz);
    const double n4 = n * n * n * n;
    const bool null_A = std::abs(a) <= 1e-12 * std::max(scale_A, 1e-300);
    const bool null_L = std::abs(l) <= 1e-12 * std::max(scale_A / n4, 1e-300);
    return {null_A, null_L};
}

}  // namespace pulselab::frames

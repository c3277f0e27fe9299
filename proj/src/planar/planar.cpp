#include "pulselab/planar/planar.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pulselab/num/ode.hpp"
#include "pulselab/num/quadrature.hpp"

namespace pulselab::planar {

using frames::Polarization;

namespace {

constexpr double kSupportCut = 1e-16;

// Omega^2 as a function of tau for the four model/polarization branches.
// mass_sq_of_tau is the dispersion-level m^2(tau) (constant for model I).
double omega_sq_of_tau(const PlanarModeLabel& mode, double n, double v, double mass_sq,
                       double n0) {
    const double g = n * n * v * v - 1.0;
    if (mode.pol == Polarization::A)
        return n * n * mode.kappa * mode.kappa +
               (mode.k_x * mode.k_x + n * n * mass_sq) * g / (v * v);
    // Lambda: equation parameter m_L^2 = m^2 n0^4 enters as m_L^2 / n^2
    const double mL_sq = mass_sq * n0 * n0 * n0 * n0;
    return mode.kappa * mode.kappa / (n * n) +
           (mode.k_x * mode.k_x + mL_sq / (n * n)) * g / (n * n * n * n * v * v);
}

struct TimeMap {
    // strictly increasing tau and T grids over the profile support
    Eigen::ArrayXd tau, T;
    double rate_start = 0.0, rate_end = 0.0;  // dT/dtau outside the support
};

// Cumulative oscillator-time map over [center - w, center + w], anchored so
// that T(tau = 0) = 0 when 0 lies inside the grid (only offsets matter).
TimeMap build_time_map(const frames::Profile& n_profile, double v, Polarization pol,
                       int samples) {
    const double c = n_profile.center();
    const double w = n_profile.support_halfwidth(kSupportCut);
    auto rate = [&](double tau) {
        const double n = n_profile(tau);
        const double g = n * n * v * v - 1.0;
        if (!(g > 0.0)) throw std::domain_error("potential: regularity violated on the profile");
        return pol == Polarization::A ? v * v / g : n * n * v * v / g;
    };
    TimeMap map;
    map.tau = Eigen::ArrayXd::LinSpaced(samples, c - w, c + w);
    map.T = Eigen::ArrayXd::Zero(samples);
    // per-interval 12-point Gauss; the rate is smooth and non-oscillatory
    static const double gn[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866174,
                                 0.7699026741943047, 0.9041172563704749, 0.9815606342467193};
    static const double gw[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                                 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};
    for (int i = 1; i < samples; ++i) {
        const double a = map.tau[i - 1], b = map.tau[i];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (int k = 0; k < 6; ++k)
            acc += gw[k] * (rate(mid + half * gn[k]) + rate(mid - half * gn[k]));
        map.T[i] = map.T[i - 1] + acc * half;
    }
    // anchor T = 0 at tau = 0 (or at the grid start if 0 is outside)
    double T0 = 0.0;
    if (map.tau[0] <= 0.0 && map.tau[samples - 1] >= 0.0) {
        // locate by linear scan + local interpolation on the fine grid
        int j = 0;
        while (j + 2 < samples && map.tau[j + 1] < 0.0) ++j;
        const double f = (0.0 - map.tau[j]) / (map.tau[j + 1] - map.tau[j]);
        T0 = map.T[j] + f * (map.T[j + 1] - map.T[j]);
    }
    map.T -= T0;
    map.rate_start = rate(map.tau[0]);
    map.rate_end = rate(map.tau[samples - 1]);
    return map;
}

PotentialTrace assemble_trace(const TimeMap& map, const std::function<double(double)>& w2_of_tau,
                              double w2_start, double w2_end, int samples) {
    // tau(T) interpolant: swap axes of the monotone map
    auto tau_of_T = std::make_shared<num::SampledFunctionD>(map.T, map.tau);
    const double T_lo = map.T[0], T_hi = map.T[map.T.size() - 1];
    const double tau_lo = map.tau[0], tau_hi = map.tau[map.tau.size() - 1];
    const double rate_start = map.rate_start, rate_end = map.rate_end;

    auto fn = [=](double T) -> double {
        double tau;
        if (T <= T_lo) tau = tau_lo + (T - T_lo) / rate_start;
        else if (T >= T_hi) tau = tau_hi + (T - T_hi) / rate_end;
        else tau = (*tau_of_T)(T);
        return w2_of_tau(tau);
    };

    PotentialTrace trace;
    trace.t_start = T_lo;
    trace.t_end = T_hi;
    trace.omega0_sq_start = w2_start;
    trace.omega0_sq_end = w2_end;
    trace.omega_sq_fn = fn;
    // cancellation-free envelope: (w^2 - w0^2)/(w + w0)
    trace.delta_omega_fn = [fn, w2_end](double T) {
        const double w2 = fn(T);
        const double w0 = std::sqrt(w2_end);
        return (w2 - w2_end) / (std::sqrt(std::max(w2, 0.0)) + w0);
    };
    Eigen::ArrayXd Ts = Eigen::ArrayXd::LinSpaced(samples, T_lo, T_hi);
    Eigen::ArrayXd ws(samples);
    for (int i = 0; i < samples; ++i) ws[i] = fn(Ts[i]);
    trace.omega_sq = num::SampledFunctionD(Ts, ws);
    return trace;
}

}  // namespace

double PotentialTrace::delta_omega_peak() const {
    const double w0 = std::sqrt(omega0_sq_end);
    double peak = 0.0;
    const auto& vals = omega_sq.values();
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        peak = std::max(peak, std::abs(std::sqrt(vals[i]) - w0));
    return peak;
}

PotentialTrace PotentialTrace::from_function(std::function<double(double)> fn, double t_start,
                                             double t_end, double omega0_sq_start,
                                             double omega0_sq_end, int samples) {
    PotentialTrace trace;
    trace.t_start = t_start;
    trace.t_end = t_end;
    trace.omega0_sq_start = omega0_sq_start;
    trace.omega0_sq_end = omega0_sq_end;
    trace.omega_sq_fn = fn;
    Eigen::ArrayXd Ts = Eigen::ArrayXd::LinSpaced(samples, t_start, t_end);
    Eigen::ArrayXd ws(samples);
    for (int i = 0; i < samples; ++i) ws[i] = fn(Ts[i]);
    trace.omega_sq = num::SampledFunctionD(Ts, ws);
    return trace;
}

PotentialTrace PotentialTrace::from_envelope(double omega0, std::function<double(double)> delta_fn,
                                             double t_start, double t_end, int samples) {
    auto w2 = [omega0, delta_fn](double T) {
        const double w = omega0 + delta_fn(T);
        return w * w;
    };
    auto trace = from_function(w2, t_start, t_end, omega0 * omega0, omega0 * omega0, samples);
    trace.delta_omega_fn = std::move(delta_fn);
    return trace;
}

PotentialTrace potential_model1(const PlanarModeLabel& mode, const frames::Profile& n_profile,
                                double v, double m0_sq, int samples) {
    frames::PulseKinematics kin{v, n_profile};
    kin.require_regular();
    const double n0 = n_profile.asymptote_start();
    const TimeMap map = build_time_map(n_profile, v, mode.pol, samples);
    auto w2 = [mode, n_profile, v, m0_sq, n0](double tau) {
        return omega_sq_of_tau(mode, n_profile(tau), v, m0_sq, n0);
    };
    const double w2_start = omega_sq_of_tau(mode, n_profile.asymptote_start(), v, m0_sq, n0);
    const double w2_end = omega_sq_of_tau(mode, n_profile.asymptote_end(), v, m0_sq, n0);
    return assemble_trace(map, w2, w2_start, w2_end, samples);
}

PotentialTrace potential_model2(const PlanarModeLabel& mode, const frames::Profile& m_profile,
                                double n0, double v, int samples) {
    if (!(n0 * n0 * v * v > 1.0))
        throw std::domain_error("potential_model2: regularity requires n0^2 v^2 > 1");
    // mass must stay positive over the support
    {
        const double c = m_profile.center();
        const double w = m_profile.support_halfwidth(kSupportCut);
        for (int i = 0; i <= 800; ++i) {
            const double tau = c - w + 2.0 * w * i / 800.0;
            if (!(m_profile(tau) > 0.0))
                throw std::domain_error("potential_model2: mass profile must stay positive");
        }
    }
    // at constant n0 the oscillator-time map is linear in tau
    const double c = m_profile.center();
    const double w = m_profile.support_halfwidth(kSupportCut);
    const double g = n0 * n0 * v * v - 1.0;
    const double rate = (mode.pol == Polarization::A) ? v * v / g : n0 * n0 * v * v / g;
    TimeMap map;
    map.tau = Eigen::ArrayXd::LinSpaced(samples, c - w, c + w);
    map.T = map.tau * rate;
    map.rate_start = map.rate_end = rate;

    auto w2 = [mode, m_profile, n0, v](double tau) {
        const double m = m_profile(tau);
        return omega_sq_of_tau(mode, n0, v, m * m, n0);
    };
    const double ms = m_profile.asymptote_start(), me = m_profile.asymptote_end();
    return assemble_trace(map, w2, omega_sq_of_tau(mode, n0, v, ms * ms, n0),
                          omega_sq_of_tau(mode, n0, v, me * me, n0), samples);
}

PotentialTrace build_potential(const PlanarModeLabel& mode, const PlanarScenario& sc) {
    if (sc.model == Model::IndexVariation) {
        const auto n_profile = frames::Profile::gaussian(sc.n0, sc.delta_n0, sc.delta_tau);
        return potential_model1(mode, n_profile, sc.v, sc.m0_sq, sc.trace_samples);
    }
    const double m0 = std::sqrt(sc.m0_sq);
    const auto m_profile = frames::Profile::gaussian(m0, sc.delta_m0, sc.delta_tau);
    return potential_model2(mode, m_profile, sc.n0, sc.v, sc.trace_samples);
}

double delta_m_from_delta_n(double delta_n, double omega, const disp::MassiveField& model) {
    if (delta_n == 0.0) return 0.0;
    const double lambda = 2.0 * M_PI / omega;
    const double n_eff = disp::massive_phase_index(model, lambda);  // throws if evanescent
    const double k = n_eff * omega;
    const double m0 = std::sqrt(model.m0_sq);
    return -delta_n * omega * omega * omega / (k * m0);
}

BogoliubovResult beta_perturbative(const PotentialTrace& trace, const num::Tolerance& tol) {
    tol.validate();
    BogoliubovResult res;
    res.method = Method::Perturbative;
    res.alpha = {1.0, 0.0};

    const double w0 = trace.omega0();
    const double peak = trace.delta_omega_peak();
    if (w0 > 0.0 && peak / w0 > 0.1)
        res.warnings.push_back("perturbative validity |dOmega|/Omega0 > 0.1");

    auto envelope = [&](double T) -> std::complex<double> {
        if (trace.delta_omega_fn) return {trace.delta_omega_fn(T), 0.0};
        const double w2 = trace.omega_sq_fn(T);
        return {std::sqrt(std::max(w2, 0.0)) - w0, 0.0};
    };
    const double scale = std::max(peak * (trace.t_end - trace.t_start), 1e-300);
    num::Tolerance qtol{tol.rel, tol.abs * scale};
    const auto q = num::quad_oscillatory(envelope, 2.0 * w0, trace.t_start, trace.t_end, qtol);
    if (!q.converged) {
        res.reliable = false;
        res.warnings.push_back("quadrature: " + q.message);
    }
    res.beta = q.value;
    res.beta_abs2 = std::norm(q.value);
    res.error_estimate = q.error_estimate;
    res.below_resolution = std::abs(q.value) < kBetaResolutionFloor;
    return res;
}

BogoliubovResult bogoliubov_exact(const PotentialTrace& trace, const num::Tolerance& tol) {
    tol.validate();
    BogoliubovResult res;
    res.method = Method::Exact;

    const double w1 = std::sqrt(trace.omega0_sq_start);
    const double w2 = std::sqrt(trace.omega0_sq_end);
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw std::domain_error("bogoliubov_exact: asymptotic Omega0 must be positive");

    // a static potential mixes nothing; the plane wave is the exact solution
    if (trace.omega0_sq_start == trace.omega0_sq_end && trace.delta_omega_peak() == 0.0) {
        res.alpha = {1.0, 0.0};
        res.beta = {0.0, 0.0};
        res.beta_abs2 = 0.0;
        res.below_resolution = true;
        return res;
    }

    using num::Complex;
    const Complex i_unit{0.0, 1.0};
    const Complex a0 = std::exp(-i_unit * w1 * trace.t_start);
    const Complex da0 = -i_unit * w1 * a0;
    const auto sol = num::integrate_oscillator(trace.omega_sq_fn, trace.t_start, trace.t_end,
                                               a0, da0, tol);
    if (!sol.converged) {
        res.reliable = false;
        res.warnings.push_back("integrator: " + sol.message);
        return res;
    }
    const Complex A = sol.value, dA = sol.derivative;
    const Complex phase_out = std::exp(i_unit * w2 * trace.t_end);
    const Complex a_raw = (w2 * A + i_unit * dA) * phase_out / (2.0 * w2);
    const Complex b_raw = (w2 * A - i_unit * dA) / phase_out / (2.0 * w2);
    const double renorm = std::sqrt(w2 / w1);
    res.alpha = a_raw * renorm;
    res.beta = b_raw * renorm;
    res.beta_abs2 = std::norm(res.beta);
    res.normalization_defect = std::norm(res.alpha) - std::norm(res.beta) - 1.0;
    res.error_estimate = std::abs(res.normalization_defect);
    res.below_resolution = std::abs(res.beta) < kBetaResolutionFloor;
    if (std::abs(res.normalization_defect) > 1e-6) {
        res.reliable = false;
        res.warnings.push_back("normalization |alpha|^2-|beta|^2 off by more than 1e-6");
    } else if (std::abs(res.normalization_defect) > 1e-8) {
        res.warnings.push_back("normalization defect above 1e-8");
    }
    return res;
}

std::vector<SpectrumRow> spectrum_sweep(const PlanarScenario& sc,
                                        const std::vector<double>& kappa_grid,
                                        const std::vector<double>& kx_grid, Method method,
                                        int threads) {
    std::vector<SpectrumRow> rows(kappa_grid.size() * kx_grid.size());
    if (rows.empty()) return rows;

    auto compute = [&](std::size_t idx) {
        const std::size_t ik = idx / kx_grid.size();
        const std::size_t ix = idx % kx_grid.size();
        SpectrumRow row;
        row.mode = PlanarModeLabel{kappa_grid[ik], kx_grid[ix], sc.pol, sc.model};
        try {
            const auto trace = build_potential(row.mode, sc);
            row.Omega0 = trace.omega0();
            row.lab = frames::lab_mode(row.Omega0, row.mode.kappa, sc.n0, sc.v, row.mode.pol);
            row.result = (method == Method::Perturbative) ? beta_perturbative(trace, sc.tol)
                                                          : bogoliubov_exact(trace, sc.tol);
            if (!row.result.reliable) row.flag = "warning: unreliable";
            else if (row.result.below_resolution) row.flag = "below_resolution";
            else if (!row.result.warnings.empty()) row.flag = "warning: " + row.result.warnings[0];
            else row.flag = "ok";
        } catch (const std::exception& e) {
            row.flag = std::string("failed: ") + e.what();
        }
        rows[idx] = std::move(row);
    };

    const std::size_t n = rows.size();
    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < n; ++i) compute(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += nthreads) compute(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace pulselab::planar

#include "pulselab/filament/filament.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pulselab/num/bessel.hpp"
#include "pulselab/num/quadrature.hpp"

namespace pulselab::filament {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Gaussian envelope support: e^{-u^2/2} < 1e-16 beyond |u| ~ 8.6
constexpr double kEnvelopeSigmas = 8.6;
// below exp(-q^2 s^2 / 2) ~ 1e-40 the longitudinal quadrature would only
// return roundoff; the factor is then reported as exactly suppressed
constexpr double kLogSuppressionFloor = -40.0 * M_LN10;

// 12-point Gauss-Legendre panel quadrature for the smooth radial integrands
const double kGN[6] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866174,
                       0.7699026741943047, 0.9041172563704749, 0.9815606342467193};
const double kGW[6] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                       0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h, half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 6; ++i)
            acc += kGW[i] * (f(mid + half * kGN[i]) + f(mid - half * kGN[i]));
        total += acc * half;
    }
    return total;
}

double adaptive_radial(const std::function<double(double)>& f, double a, double b,
                       int panels0, double rel_tol) {
    int n = panels0;
    double prev = gauss_panels(f, a, b, n);
    for (int lvl = 0; lvl < 10; ++lvl) {
        n *= 2;
        const double cur = gauss_panels(f, a, b, n);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double CylinderModeLabel::on_shell_residual() const {
    return Omega * Omega - (k_r * k_r / (n0 * n0) + kappa * kappa + m0_sq);
}

CylinderModeLabel cylinder_mode_from_kr(double kappa, double k_r, double n0, double m0_sq,
                                        frames::Polarization pol) {
    if (!(k_r > 0.0)) throw std::invalid_argument("cylinder_mode: k_r must be > 0");
    if (!(n0 > 0.0) || !(m0_sq >= 0.0))
        throw std::invalid_argument("cylinder_mode: bad medium parameters");
    CylinderModeLabel m;
    m.kappa = kappa;
    m.k_r = k_r;
    m.pol = pol;
    m.n0 = n0;
    m.m0_sq = m0_sq;
    m.Omega = std::sqrt(k_r * k_r / (n0 * n0) + kappa * kappa + m0_sq);
    m.norm = std::sqrt(k_r / (8.0 * M_PI * M_PI * M_PI * m.Omega));
    return m;
}

CylinderModeLabel cylinder_mode_from_omega(double Omega, double kappa, double n0, double m0_sq,
                                           frames::Polarization pol) {
    const double kr_sq = (Omega * Omega - kappa * kappa - m0_sq) * n0 * n0;
    if (!(kr_sq > 0.0)) {
        std::ostringstream msg;
        msg << "cylinder_mode: off shell, Omega^2 - kappa^2 - m0^2 = "
            << (Omega * Omega - kappa * kappa - m0_sq);
        throw std::invalid_argument(msg.str());
    }
    return cylinder_mode_from_kr(kappa, std::sqrt(kr_sq), n0, m0_sq, pol);
}

Complex mode_value(const CylinderModeLabel& mode, double tau, double rho, double r) {
    if (r < 0.0) throw std::invalid_argument("mode_value: r must be >= 0");
    const Complex i_unit{0.0, 1.0};
    const Complex phase = std::exp(i_unit * (-mode.Omega * tau + mode.kappa * rho));
    return mode.norm * phase * r * num::bessel_j1(mode.k_r * r);
}

void FilamentPulse::validate() const {
    if (!(delta_tau > 0.0) || !(delta_r > 0.0))
        throw std::invalid_argument("FilamentPulse: widths must be > 0");
}

double FilamentPulse::envelope_tau(double tau) const {
    const double u = tau / delta_tau;
    double e = std::exp(-0.5 * u * u);
    if (carrier_omega_tau) {
        const double c = std::cos(*carrier_omega_tau * tau);
        e *= c * c;
    }
    return e;
}

double FilamentPulse::envelope_r(double r) const {
    const double u = r / delta_r;
    return std::exp(-0.5 * u * u);
}

double FilamentPulse::delta_m(double tau, double r) const {
    return delta_m0 * envelope_tau(tau) * envelope_r(r);
}

double log_envelope_factor(double sigma_tau, double q) {
    return std::log(std::sqrt(kTwoPi) * sigma_tau) - 0.5 * q * q * sigma_tau * sigma_tau;
}

Complex carrier_longitudinal_factor(const FilamentPulse& pulse, double q,
                                    const num::Tolerance& tol) {
    // The cos^2 carrier is split exactly into its three frequency channels;
    // each channel is an envelope integral at a shifted carrier.  Channels
    // whose Gaussian bound underflows the quadrature floor are dropped.
    const double s = pulse.delta_tau;
    const double w = kEnvelopeSigmas * s;
    struct Channel {
        double weight, freq;
    };
    std::vector<Channel> channels;
    if (pulse.carrier_omega_tau) {
        const double wc = *pulse.carrier_omega_tau;
        channels = {{0.5, -q}, {0.25, 2.0 * wc - q}, {0.25, -2.0 * wc - q}};
    } else {
        channels = {{1.0, -q}};
    }
    Complex total{0.0, 0.0};
    for (const auto& ch : channels) {
        if (log_envelope_factor(s, ch.freq) < kLogSuppressionFloor) continue;
        auto env = [&](double tau) -> Complex {
            const double u = tau / s;
            return {std::exp(-0.5 * u * u), 0.0};
        };
        num::Tolerance qtol{tol.rel, tol.abs * std::max(1.0, std::sqrt(kTwoPi) * s)};
        const auto res = num::quad_oscillatory(env, ch.freq, -w, w, qtol);
        total += ch.weight * res.value;
    }
    return total;
}

namespace {

// integral_0^rmax dr r envelope_r(r) J1(a r) J1(b r), unit peak amplitude.
// The domain covers several Bessel oscillations but never extends past the
// radius where the Gaussian profile has fallen below 1e-18 of its peak.
double radial_overlap(const FilamentPulse& pulse, double a, double b, std::string* warning) {
    const double envelope_cut = 9.2 * pulse.delta_r;
    const double rmax =
        std::max(8.0 * pulse.delta_r, std::min(40.0 / std::min(a, b), envelope_cut));
    auto f = [&](double r) {
        return r * pulse.envelope_r(r) * num::bessel_j1(a * r) * num::bessel_j1(b * r);
    };
    const double osc = std::max(a, b);
    const int panels0 = std::max(16, static_cast<int>(std::ceil(rmax * osc / M_PI)));
    const double total = adaptive_radial(f, 0.0, rmax, panels0, 1e-12);
    // tail check over the outer 10%
    const double tail = adaptive_radial(f, 0.9 * rmax, rmax, std::max(4, panels0 / 8), 1e-10);
    if (warning && std::abs(tail) > 1e-10 * std::max(std::abs(total), 1e-300))
        *warning = "radial integral tail above 1e-10 of total: extend r_max";
    return total;
}

void require_opposite_kappa(const CylinderModeLabel& m1, const CylinderModeLabel& m2) {
    const double scale = std::max({1.0, std::abs(m1.kappa), std::abs(m2.kappa)});
    if (std::abs(m1.kappa + m2.kappa) > 1e-12 * scale)
        throw std::invalid_argument(
            "pair_amplitude: momentum selection requires kappa' = -kappa; "
            "amplitudes away from that line vanish identically and are not evaluated");
}

Complex amplitude_prefactor(const CylinderModeLabel& m1, const CylinderModeLabel& m2) {
    const double m0 = std::sqrt(m1.m0_sq);
    const double root = std::sqrt(m1.k_r * m2.k_r / (m1.Omega * m2.Omega));
    return Complex{0.0, -1.0} * (m0 / 2.0) * root;
}

}  // namespace

PairAmplitude pair_amplitude(const CylinderModeLabel& final1, const CylinderModeLabel& final2,
                             const FilamentPulse& pulse, const num::Tolerance& tol) {
    pulse.validate();
    require_opposite_kappa(final1, final2);
    if (std::abs(final1.n0 - final2.n0) > 1e-12 || std::abs(final1.m0_sq - final2.m0_sq) > 1e-12)
        throw std::invalid_argument("pair_amplitude: modes from different medium parameters");

    PairAmplitude out;
    out.final1 = final1;
    out.final2 = final2;

    const double q = final1.Omega + final2.Omega;
    const Complex L = carrier_longitudinal_factor(pulse, q, tol);
    out.longitudinal_abs = std::abs(L);
    if (L == Complex{0.0, 0.0} && !pulse.carrier_omega_tau) out.suppressed_below_floor = true;

    out.radial = radial_overlap(pulse, final1.k_r, final2.k_r, &out.warning);
    out.amplitude_density = amplitude_prefactor(final1, final2) * pulse.delta_m0 * L * out.radial;
    out.abs2 = std::norm(out.amplitude_density);
    return out;
}

double radial_moment_r3(const FilamentPulse& pulse, const num::Tolerance&) {
    auto f = [&](double r) { return r * r * r * pulse.envelope_r(r); };
    const double rmax = 10.0 * pulse.delta_r;
    return adaptive_radial(f, 0.0, rmax, 32, 1e-13);
}

PairAmplitude small_kr_amplitude(const CylinderModeLabel& final1,
                                 const CylinderModeLabel& final2, const FilamentPulse& pulse,
                                 const num::Tolerance& tol) {
    pulse.validate();
    require_opposite_kappa(final1, final2);
    PairAmplitude out;
    out.final1 = final1;
    out.final2 = final2;

    if (final1.k_r * pulse.delta_r > 0.05 || final2.k_r * pulse.delta_r > 0.05)
        out.warning = "small-k_r guard violated: k_r delta_r > 0.05";

    const double q = final1.Omega + final2.Omega;
    const Complex L = carrier_longitudinal_factor(pulse, q, tol);
    out.longitudinal_abs = std::abs(L);
    const double moment = radial_moment_r3(pulse, tol);
    out.radial = (final1.k_r * final2.k_r / 4.0) * moment;
    out.amplitude_density = amplitude_prefactor(final1, final2) * pulse.delta_m0 * L * out.radial;
    out.abs2 = std::norm(out.amplitude_density);
    return out;
}

TotalProbability total_probability(const CylinderModeLabel& final,
                                   const std::vector<double>& kr_grid,
                                   const FilamentPulse& pulse, const num::Tolerance& tol) {
    TotalProbability out;
    if (kr_grid.size() < 3) {
        out.coverage_ok = false;
        out.message = "initial k_r' grid too small";
        return out;
    }
    std::vector<double> abs2(kr_grid.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < kr_grid.size(); ++i) {
        const auto init = cylinder_mode_from_kr(-final.kappa, kr_grid[i], final.n0, final.m0_sq,
                                                final.pol);
        const auto amp = pair_amplitude(final, init, pulse, tol);
        abs2[i] = amp.abs2;
        peak = std::max(peak, amp.abs2);
    }
    out.grid_points = static_cast<int>(kr_grid.size());
    // coverage: the integrand must have decayed at the top of the grid
    if (peak > 0.0 && abs2.back() > 1e-6 * peak) {
        out.coverage_ok = false;
        // the longitudinal factor dies once (Omega+Omega') sigma ~ 8
        const double target_omega = std::max(8.0 / pulse.delta_tau - final.Omega, 0.0);
        const double kr2 =
            (target_omega * target_omega - final.kappa * final.kappa - final.m0_sq) *
            final.n0 * final.n0;
        out.suggested_kr_max = kr2 > 0.0 ? std::sqrt(kr2) : 2.0 * kr_grid.back();
        out.message = "grid does not cover the longitudinal-factor support";
    }
    // trapezoid over the (possibly nonuniform) grid, rate per unit length
    double integral = 0.0;
    for (std::size_t i = 1; i < kr_grid.size(); ++i)
        integral += 0.5 * (abs2[i] + abs2[i - 1]) * (kr_grid[i] - kr_grid[i - 1]);
    out.rate_per_length = integral / kTwoPi;
    return out;
}

Substructure substructure_profile(double delta_n0, double delta_t_lab, double delta_r, double v,
                                  double n0, double v_ph, double theta_rad, double omega_in,
                                  bool apply_cone_correction) {
    if (!(v > 0.0 && v < 1.0) || !(v_ph > 0.0 && v_ph < 1.0))
        throw std::invalid_argument("substructure_profile: speeds must lie in (0, 1)");
    if (!(theta_rad >= 0.0 && theta_rad < M_PI / 2.0))
        throw std::invalid_argument("substructure_profile: cone angle must lie in [0, pi/2)");
    const double g = n0 * n0 * v * v - 1.0;
    if (!(g > 0.0)) throw std::domain_error("substructure_profile: regularity violated");

    Substructure s;
    s.v_ph_effective = apply_cone_correction ? v_ph / std::cos(theta_rad) : v_ph;
    const double sroot = std::sqrt(g);
    const double slip = 1.0 - v / s.v_ph_effective;
    s.omega_tau = omega_in * (sroot / (n0 * v)) * (1.0 + slip / g);
    s.omega_rho = omega_in * slip / sroot;
    s.sigma_tau = n0 * v * delta_t_lab / sroot;
    const double sig = s.sigma_tau, wt = s.omega_tau, wr = s.omega_rho;
    s.delta_n = [delta_n0, delta_r, sig, wt, wr](double tau, double rho, double r) {
        const double ut = tau / sig, ur = r / delta_r;
        const double c = std::cos(wt * tau + wr * rho);
        return delta_n0 * std::exp(-0.5 * ut * ut) * std::exp(-0.5 * ur * ur) * c * c;
    };
    return s;
}

TensorGrid TensorGrid::make(double rho_min, double rho_max, int rho_panels, double r_min,
                            double r_max, int r_panels) {
    auto fill = [](double a, double b, int panels, Eigen::ArrayXd& nodes,
                   Eigen::ArrayXd& weights) {
        nodes.resize(panels * 12);
        weights.resize(panels * 12);
        const double h = (b - a) / panels;
        int k = 0;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h, half = 0.5 * h;
            for (int i = 0; i < 6; ++i) {
                nodes[k] = mid - half * kGN[i];
                weights[k++] = kGW[i] * half;
                nodes[k] = mid + half * kGN[i];
                weights[k++] = kGW[i] * half;
            }
        }
    };
    TensorGrid g;
    fill(rho_min, rho_max, rho_panels, g.rho_nodes, g.rho_weights);
    fill(r_min, r_max, r_panels, g.r_nodes, g.r_weights);
    return g;
}

FieldState superpose(const std::vector<ModeAmplitude>& modes, const TensorGrid& grid) {
    FieldState st;
    st.grid = grid;
    const Eigen::Index nr = grid.rho_nodes.size(), nc = grid.r_nodes.size();
    st.psi = Eigen::MatrixXcd::Zero(nr, nc);
    st.pi = Eigen::MatrixXcd::Zero(nr, nc);
    const Complex i_unit{0.0, 1.0};
    for (const auto& m : modes) {
        // separable evaluation: radial column vector x rho phase row vector
        Eigen::VectorXcd rad(nc);
        for (Eigen::Index j = 0; j < nc; ++j) {
            const double r = grid.r_nodes[j];
            rad[j] = m.mode.norm * r * num::bessel_j1(m.mode.k_r * r);
        }
        Eigen::VectorXcd rho_phase(nr);
        for (Eigen::Index i = 0; i < nr; ++i)
            rho_phase[i] = std::exp(i_unit * m.mode.kappa * grid.rho_nodes[i]);
        st.psi.noalias() += (m.coeff * m.A) * (rho_phase * rad.transpose());
        st.pi.noalias() += (m.coeff * m.dA) * (rho_phase * rad.transpose());
    }
    return st;
}

InnerProduct pseudo_inner_product(const FieldState& s1, const FieldState& s2) {
    if (s1.grid.rho_nodes.size() != s2.grid.rho_nodes.size() ||
        s1.grid.r_nodes.size() != s2.grid.r_nodes.size())
        throw std::invalid_argument("pseudo_inner_product: mismatched grids");
    const Eigen::Index nr = s1.grid.rho_nodes.size(), nc = s1.grid.r_nodes.size();
    Complex acc{0.0, 0.0};
    double peak = 0.0, boundary = 0.0;
    for (Eigen::Index i = 0; i < nr; ++i) {
        for (Eigen::Index j = 0; j < nc; ++j) {
            const double w = s1.grid.rho_weights[i] * s1.grid.r_weights[j];
            const double measure = kTwoPi / s1.grid.r_nodes[j];
            const Complex term = std::conj(s1.psi(i, j)) * s2.pi(i, j) -
                                 std::conj(s1.pi(i, j)) * s2.psi(i, j);
            acc += w * measure * term;
            const double mag = std::abs(s1.psi(i, j));
            peak = std::max(peak, mag);
            if (i == 0 || i == nr - 1 || j == nc - 1) boundary = std::max(boundary, mag);
        }
    }
    InnerProduct out;
    out.value = Complex{0.0, 0.5} * acc;
    if (peak > 0.0 && boundary > 1e-6 * peak)
        out.warning = "state has not decayed at the grid boundary";
    return out;
}

}  // namespace pulselab::filament

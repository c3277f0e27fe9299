#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pulselab/frames/frames.hpp"
#include "pulselab/num/tolerance.hpp"

namespace pulselab::filament {

using Complex = std::complex<double>;

/// Cylindrical mode (Omega, kappa, k_r) of the boosted filament geometry,
/// on shell with Omega^2 = k_r^2/n0^2 + kappa^2 + m0^2.  The mode function
/// is N e^{-i Omega tau + i kappa rho} r J1(k_r r) with the pseudo-norm
/// normalization N = sqrt(k_r / (8 pi^3 Omega)).
struct CylinderModeLabel {
    double Omega = 0.0;
    double kappa = 0.0;
    double k_r = 0.0;
    frames::Polarization pol = frames::Polarization::A;
    double n0 = 0.0;
    double m0_sq = 0.0;
    double norm = 0.0;

    double on_shell_residual() const;
};

/// Build from (kappa, k_r); Omega follows from the shell condition.
CylinderModeLabel cylinder_mode_from_kr(double kappa, double k_r, double n0, double m0_sq,
                                        frames::Polarization pol = frames::Polarization::A);
/// Build from (Omega, kappa); k_r follows, rejecting off-shell input
/// (Omega^2 < kappa^2 + m0^2) with the residual in the message.
CylinderModeLabel cylinder_mode_from_omega(double Omega, double kappa, double n0, double m0_sq,
                                           frames::Polarization pol = frames::Polarization::A);

/// Spatial mode function at unit oscillator amplitude.
Complex mode_value(const CylinderModeLabel& mode, double tau, double rho, double r);

/// Gaussian pulse of the effective mass in the boosted frame:
/// delta_m(tau, r) = delta_m0 exp(-tau^2/(2 delta_tau^2)) exp(-r^2/(2 delta_r^2)),
/// optionally multiplied by the carrier cos^2(omega_tau tau).
/// delta_m0 is the dispersion-level perturbation (the A-equation parameter).
struct FilamentPulse {
    double delta_m0 = 0.0;
    double delta_tau = 0.0;  // boosted-frame envelope standard deviation, um
    double delta_r = 2.0;    // radial width, um
    std::optional<double> carrier_omega_tau;  // cos^2 carrier frequency in tau

    void validate() const;
    double envelope_tau(double tau) const;
    double envelope_r(double r) const;
    /// Full tau-profile including the carrier factor, peak delta_m0.
    double delta_m(double tau, double r) const;
};

struct PairAmplitude {
    CylinderModeLabel final1, final2;
    Complex amplitude_density{};  // per unit kappa (the momentum delta stripped)
    double abs2 = 0.0;
    double longitudinal_abs = 0.0;  // |integral dtau env e^{-i(O+O')tau}|
    double radial = 0.0;            // integral dr r delta_m_r J1 J1 (unit peak)
    bool suppressed_below_floor = false;
    std::string warning;
};

/// First-order pair-creation amplitude density for the two final modes,
/// kappa' = -kappa enforced (evaluation with any other kappa' is refused).
PairAmplitude pair_amplitude(const CylinderModeLabel& final1, const CylinderModeLabel& final2,
                             const FilamentPulse& pulse, const num::Tolerance& tol = {});

/// Factorized small-k_r form: J1(k r) ~ k r / 2 pulls (k_r k_r'/4) out and
/// leaves the r^3 moment of the profile.  Guard: k_r delta_r <= 0.05.
PairAmplitude small_kr_amplitude(const CylinderModeLabel& final1,
                                 const CylinderModeLabel& final2, const FilamentPulse& pulse,
                                 const num::Tolerance& tol = {});

/// r^3 radial moment of the pulse profile (unit peak amplitude).
double radial_moment_r3(const FilamentPulse& pulse, const num::Tolerance& tol = {});

struct TotalProbability {
    double rate_per_length = 0.0;  // created pairs per unit pulse length
    bool coverage_ok = true;
    double suggested_kr_max = 0.0;
    int grid_points = 0;
    std::string message;
};

/// Sum over initial modes: quadrature of |amplitude|^2/(2 pi) over the
/// initial k_r' grid at kappa' = -kappa.  The grid must cover the support
/// of the longitudinal factor, otherwise a refinement request is returned.
TotalProbability total_probability(const CylinderModeLabel& final,
                                   const std::vector<double>& kr_grid,
                                   const FilamentPulse& pulse, const num::Tolerance& tol = {});

struct Substructure {
    double omega_tau = 0.0;
    double omega_rho = 0.0;
    double sigma_tau = 0.0;      // boosted envelope width
    double v_ph_effective = 0.0;
    /// delta_n(tau, rho, r) with the cos^2 carrier
    std::function<double(double, double, double)> delta_n;
};

/// Oscillating sub-structure of the pump in boosted coordinates.  The
/// quoted carrier phase velocity may be corrected by 1/cos(theta) for the
/// conical pump geometry via apply_cone_correction.
Substructure substructure_profile(double delta_n0, double delta_t_lab, double delta_r, double v,
                                  double n0, double v_ph, double theta_rad, double omega_in,
                                  bool apply_cone_correction = false);

/// Closed-form magnitude, in natural logarithm, of the Gaussian envelope
/// Fourier factor  |integral e^{-tau^2/(2 s^2)} e^{-i q tau} dtau|.
double log_envelope_factor(double sigma_tau, double q);

/// Longitudinal Fourier factor of the full carrier-modulated profile at
/// frequency q, by oscillatory quadrature (peak amplitude 1).
Complex carrier_longitudinal_factor(const FilamentPulse& pulse, double q,
                                    const num::Tolerance& tol = {});

/// Separable quadrature grid (Gauss-Legendre panels) for field states.
struct TensorGrid {
    Eigen::ArrayXd rho_nodes, rho_weights;
    Eigen::ArrayXd r_nodes, r_weights;

    static TensorGrid make(double rho_min, double rho_max, int rho_panels, double r_min,
                           double r_max, int r_panels);
};

/// Field state (Psi, Pi = d Psi/d tau) sampled on a tensor grid;
/// rows index rho, columns index r.
struct FieldState {
    TensorGrid grid;
    Eigen::MatrixXcd psi, pi;
};

struct ModeAmplitude {
    CylinderModeLabel mode;
    Complex coeff{1.0, 0.0};
    Complex A{1.0, 0.0};   // oscillator amplitude
    Complex dA{0.0, 0.0};  // d A / d tau
};

/// Superpose modes with per-mode oscillator amplitudes into a field state.
FieldState superpose(const std::vector<ModeAmplitude>& modes, const TensorGrid& grid);

struct InnerProduct {
    Complex value{};
    std::string warning;
};

/// Conserved pseudo inner product
/// (Psi1|Psi2) = (i/2) integral drho dr (2 pi / r)(Psi1* Pi2 - Pi1* Psi2),
/// evaluated with the states' quadrature weights.  A warning is attached
/// when the states have not decayed at the grid boundary.
InnerProduct pseudo_inner_product(const FieldState& s1, const FieldState& s2);

}  // namespace pulselab::filament

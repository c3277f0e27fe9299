#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace pulselab::disp {

/// Thrown when no propagating root exists at the requested wavelength
/// (lab frequency below the in-medium mass cutoff).
class EvanescentError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Three-term Sellmeier model, n^2(l) = 1 + sum B_i l^2 / (l^2 - C_i).
/// Wavelengths in micrometres, C_i in micrometres squared.
struct SellmeierSilica {
    std::array<double, 3> B;
    std::array<double, 3> C;
    double lambda_min = 0.21;  // validity window, um
    double lambda_max = 3.7;

    /// Standard fused-silica coefficients.
    static SellmeierSilica fused_silica();
};

double sellmeier_index(const SellmeierSilica& model, double lambda_um);
/// Closed-form dn/dlambda of the Sellmeier index.
double sellmeier_index_derivative(const SellmeierSilica& model, double lambda_um);
/// Group index n_g = n - lambda dn/dlambda.
double sellmeier_group_index(const SellmeierSilica& model, double lambda_um);

/// Massive-field dispersion surrogate: lab dispersion w^2 = k^2/n0^2 + m0^2,
/// so the phase index k/w tends to n0 at short wavelength and cuts off at
/// w = m0.  m0^2 carried in 1/um^2.
struct MassiveField {
    double n0;
    double m0_sq;

    void validate() const {
        if (!(n0 > 1.0)) throw std::invalid_argument("MassiveField: n0 must be > 1");
        if (!(m0_sq > 0.0)) throw std::invalid_argument("MassiveField: m0^2 must be > 0");
    }
};

bool massive_propagating(const MassiveField& model, double lambda_um);
/// Phase index k/w at free-space wavelength lambda (in-medium wavenumber k
/// solved by bisection).  Throws EvanescentError below cutoff.
double massive_phase_index(const MassiveField& model, double lambda_um);
/// Group index; the phase-group product equals n0^2 for this dispersion.
double massive_group_index(const MassiveField& model, double lambda_um);

/// Two-point fit of (n0, m0^2) such that the massive phase index equals the
/// Sellmeier index at both knots to better than 1e-10.
MassiveField fit_massive_model(const SellmeierSilica& silica, double knot1_um, double knot2_um);

/// Dual-polarization variant: same n0, mass squared multiplied by n0^4.
MassiveField lambda_variant(const MassiveField& model);

struct HorizonBand {
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    bool empty = true;
};

/// Tagged union over the two index models.
struct DispersionModel {
    std::variant<SellmeierSilica, MassiveField> model;
    double phase_index(double lambda_um) const;
};

/// Free-space wavelength band where the pulse (speed v, in units of c0)
/// outruns the in-pulse phase velocity 1/(n+delta_n) but not the outside
/// one 1/n.  An empty band is a valid result.
HorizonBand phase_horizon_band(const DispersionModel& outside, double delta_n, double v,
                               double window_lo_um, double window_hi_um);

struct Fig1Row {
    double lambda_um;
    double n_p_silica, n_g_silica;
    double n_p_massive, n_g_massive;
    double n_c_silica;  // geometric mean sqrt(n_p n_g) for silica
    double n0;          // the massive model's geometric mean, constant
};

/// Index-comparison table (phase/group/geometric-mean curves for both
/// models), sampled uniformly over [lo, hi].
std::vector<Fig1Row> fig1_table(const SellmeierSilica& silica, const MassiveField& massive,
                                double lo_um, double hi_um, int samples);

}  // namespace pulselab::disp

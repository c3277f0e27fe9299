#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pulselab/disp/dispersion.hpp"
#include "pulselab/frames/frames.hpp"
#include "pulselab/num/sampled_function.hpp"
#include "pulselab/num/tolerance.hpp"

namespace pulselab::planar {

/// First model: the index n(z - vt) varies, the field mass is constant.
/// Second model: the mass m(z - vt) varies at constant index n0.
enum class Model { IndexVariation, MassVariation };

enum class Method { Perturbative, Exact };

/// |beta| values below this are reported as "below resolution" rather than
/// as a measurement; the integrator tolerance cannot distinguish smaller
/// mixing from noise.
inline constexpr double kBetaResolutionFloor = 1e-13;

struct PlanarModeLabel {
    double kappa = 0.0;  // comoving longitudinal wavenumber, 1/um
    double k_x = 0.0;    // transverse wavenumber, 1/um
    frames::Polarization pol = frames::Polarization::A;
    Model model = Model::IndexVariation;
};

/// Oscillator potential Omega^2(T) for one mode: sampled trace plus an
/// exact evaluator, with the asymptotic constants at both ends.
struct PotentialTrace {
    num::SampledFunctionD omega_sq;              // uniform samples in T
    std::function<double(double)> omega_sq_fn;   // exact evaluator
    /// Optional direct evaluator of Omega(T) - Omega0.  Reconstructing the
    /// envelope from Omega^2 loses everything below ~1e-16 Omega0, which
    /// matters in the deeply suppressed regime; builders that know the
    /// envelope analytically should provide it.
    std::function<double(double)> delta_omega_fn;
    double t_start = 0.0, t_end = 0.0;
    double omega0_sq_start = 0.0, omega0_sq_end = 0.0;

    double omega0() const { return std::sqrt(omega0_sq_end); }
    /// Peak of |Omega(T) - Omega0| over the sampled grid.
    double delta_omega_peak() const;

    static PotentialTrace from_function(std::function<double(double)> fn, double t_start,
                                        double t_end, double omega0_sq_start,
                                        double omega0_sq_end, int samples = 2001);
    /// Build from Omega0 and the envelope deltaOmega(T) directly.
    static PotentialTrace from_envelope(double omega0, std::function<double(double)> delta_fn,
                                        double t_start, double t_end, int samples = 2001);
};

struct BogoliubovResult {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
    double beta_abs2 = 0.0;
    Method method = Method::Perturbative;
    double error_estimate = 0.0;
    double normalization_defect = 0.0;  // |alpha|^2 - |beta|^2 - 1 (exact method)
    bool below_resolution = false;
    bool reliable = true;
    std::vector<std::string> warnings;
};

/// Pulse scenario for the planar engine.  delta_tau is the Gaussian
/// standard deviation in comoving time tau.  Mass perturbations are given
/// at the dispersion level (the A-polarization equation parameter); the
/// Lambda equation's own parameter picks up the n^2 factors internally.
struct PlanarScenario {
    Model model = Model::IndexVariation;
    frames::Polarization pol = frames::Polarization::A;
    double v = 0.0;
    double n0 = 0.0;
    double m0_sq = 0.0;
    double delta_n0 = 0.0;
    double delta_m0 = 0.0;
    double delta_tau = 0.0;
    int trace_samples = 4001;
    num::Tolerance tol{};
};

/// Model-I potential: index profile n(tau), constant mass.  m0_sq is the
/// dispersion-level mass squared; the Lambda branch carries m^2 n0^4 / n^4.
PotentialTrace potential_model1(const PlanarModeLabel& mode, const frames::Profile& n_profile,
                                double v, double m0_sq, int samples = 4001);

/// Model-II potential: mass profile m(tau) at constant n0.  The profile is
/// the dispersion-level mass and must stay positive.
PotentialTrace potential_model2(const PlanarModeLabel& mode, const frames::Profile& m_profile,
                                double n0, double v, int samples = 4001);

PotentialTrace build_potential(const PlanarModeLabel& mode, const PlanarScenario& sc);

/// Mass change reproducing an index change delta_n at lab frequency omega:
/// delta_m = -delta_n omega^3/(k m), k the in-medium wavenumber.
double delta_m_from_delta_n(double delta_n, double omega, const disp::MassiveField& model);

/// First-order mixing amplitude beta = integral dT deltaOmega(T) e^{2i Omega0 T}.
BogoliubovResult beta_perturbative(const PotentialTrace& trace, const num::Tolerance& tol = {});

/// Exact mixing from integrating the oscillator through the trace and
/// projecting the out state onto the asymptotic plane waves.
BogoliubovResult bogoliubov_exact(const PotentialTrace& trace, const num::Tolerance& tol = {});

struct SpectrumRow {
    PlanarModeLabel mode;
    double Omega0 = 0.0;
    frames::LabMode lab{0.0, 0.0};
    BogoliubovResult result;
    std::string flag;  // "ok", "below_resolution", "warning: ...", "failed: ..."
};

/// One row per grid point, ordered by (kappa index, k_x index) regardless
/// of worker count.  Per-mode failures are recorded and the sweep continues.
std::vector<SpectrumRow> spectrum_sweep(const PlanarScenario& sc,
                                        const std::vector<double>& kappa_grid,
                                        const std::vector<double>& kx_grid, Method method,
                                        int threads = 1);

}  // namespace pulselab::planar

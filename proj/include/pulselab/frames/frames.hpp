#pragma once

#include <optional>
#include <utility>

#include "pulselab/frames/profile.hpp"
#include "pulselab/num/sampled_function.hpp"

namespace pulselab::frames {

enum class Polarization { A, Lambda };

enum class Regime { Subcritical, Critical, Supercritical };

struct RegularityFactor {
    double n_sq_v_sq;
    Regime regime;
};

/// n^2 v^2, with the metric-regularity classification (supercritical > 1
/// keeps the comoving metric regular).
RegularityFactor regularity_factor(double n, double v);

/// Pulse kinematics for the planar models: constant speed v (units of c0)
/// and the comoving index profile n(tau).
struct PulseKinematics {
    double v;
    Profile n_of_tau;

    /// Throws with the offending tau-interval if n^2 v^2 <= 1 anywhere on
    /// the profile support.
    void require_regular() const;
};

struct ComovingCoords {
    double tau, rho;
};
struct LabCoords {
    double t, z;
};

/// (t, z) -> (tau, rho): tau = t - z/v, rho = z - I(tau) with
/// I(tau) = integral_0^tau v/(v^2 n^2 - 1) dtau'.
ComovingCoords comoving_coords(double t, double z, const PulseKinematics& kin);
LabCoords inverse_comoving(double tau, double rho, const PulseKinematics& kin);

/// Oscillator-time map: T(tau) = integral_0^tau v^2/(n^2 v^2 - 1) dtau'
/// for the A polarization; the Lambda map carries an extra n^2.
double oscillator_time(double tau, const PulseKinematics& kin, Polarization pol);
/// dT/dtau at a given tau.
double oscillator_time_rate(double tau, const PulseKinematics& kin, Polarization pol);

struct HubblePair {
    num::SampledFunctionD H_z;  // [n^2v^2/(n^2v^2-1)] dln(n)/dtau
    num::SampledFunctionD H_x;  // dln(n)/dtau
};
HubblePair hubble_parameters(const PulseKinematics& kin, int samples = 801);

struct LabMode {
    double omega, k_z;
};

/// Lab-frame frequency/wavenumber of the comoving mode (Omega0, kappa).
/// The pair satisfies the constant-n lab dispersion of the corresponding
/// polarization identically.
LabMode lab_mode(double Omega0, double kappa, double n0, double v,
                 Polarization pol = Polarization::A);
/// Inverse map (omega, k_z) -> (Omega0, kappa).
std::pair<double, double> lab_mode_inverse(const LabMode& lab, double n0, double v,
                                           Polarization pol = Polarization::A);

/// Boost diagonalizing the unperturbed cylindrical metric:
/// tau = n0 v (t - z/v)/s, rho = (n0^2 v z - t)/s with s = sqrt(n0^2v^2-1).
ComovingCoords filament_boost(double t, double z, double v, double n0);

/// Line elements of the two planar effective metrics on a direction.
double ds2_A(double n, double dt, double dx, double dz);
double ds2_Lambda(double n, double dt, double dx, double dz);

struct NullFlags {
    bool is_null_A;
    bool is_null_Lambda;
};
/// Null-direction test for both metrics; the flags agree for every
/// direction since the metrics are conformally related.
NullFlags null_cone_check(double n, double dt, double dx, double dz);

}  // namespace pulselab::frames

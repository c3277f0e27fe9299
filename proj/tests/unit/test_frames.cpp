#include <doctest.h>

#include <cmath>
#include <random>

#include "pulselab/frames/frames.hpp"

using namespace pulselab;
using frames::Polarization;

namespace {
const double kV = 1.0 / 1.4533;
}

TEST_CASE("regularity factor: quoted parameters and classification") {
    const auto rf = frames::regularity_factor(1.459, kV);
    // 1.008 to three decimals
    CHECK(std::abs(rf.n_sq_v_sq - 1.008) < 5e-4);
    CHECK(rf.regime == frames::Regime::Supercritical);

    const auto crit = frames::regularity_factor(1.4533, kV);
    CHECK(crit.n_sq_v_sq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(crit.regime == frames::Regime::Critical);

    // stays supercritical even at the peak index change
    CHECK(frames::regularity_factor(1.459 + 1e-3, kV).n_sq_v_sq > 1.0);
    CHECK(frames::regularity_factor(1.0, 0.5).regime == frames::Regime::Subcritical);
}

TEST_CASE("comoving coordinates: closed form at constant index") {
    frames::PulseKinematics kin{kV, frames::Profile::constant(1.459)};
    // tau = t at z = 0
    const auto c0 = frames::comoving_coords(2.5, 0.0, kin);
    CHECK(c0.tau == doctest::Approx(2.5).epsilon(1e-14));
    // rho - z = -tau v/(v^2 n^2 - 1)
    const double shift = kV / (kV * kV * 1.459 * 1.459 - 1.0);
    const auto c1 = frames::comoving_coords(1.0, 0.0, kin);
    CHECK(c1.rho - 0.0 == doctest::Approx(-shift).epsilon(1e-10));
    CHECK(std::abs(shift) > 80.0);  // tens of microns per micron of tau
    CHECK(std::abs(shift) < 95.0);
}

TEST_CASE("comoving coordinates reject subcritical profiles") {
    frames::PulseKinematics kin{0.5, frames::Profile::constant(1.0)};
    CHECK_THROWS_AS(frames::comoving_coords(0.0, 0.0, kin), std::domain_error);
}

TEST_CASE("comoving coordinates invert on random points") {
    frames::PulseKinematics kin{kV, frames::Profile::gaussian(1.4595, 1e-3, 10.0)};
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> pick(-50.0, 50.0);
    for (int i = 0; i < 40; ++i) {
        const double t = pick(rng), z = pick(rng);
        const auto c = frames::comoving_coords(t, z, kin);
        const auto back = frames::inverse_comoving(c.tau, c.rho, kin);
        CHECK(std::abs(back.t - t) < 1e-10 * std::max(1.0, std::abs(t)));
        CHECK(std::abs(back.z - z) < 1e-10 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("oscillator time: stretch factors and monotonicity") {
    frames::PulseKinematics kin{kV, frames::Profile::constant(1.459)};
    const double g = 1.459 * 1.459 * kV * kV - 1.0;
    const double rate_A = kV * kV / g;
    CHECK(frames::oscillator_time_rate(0.0, kin, Polarization::A) ==
          doctest::Approx(rate_A).epsilon(1e-13));
    // ~60 with the quoted parameters
    CHECK(rate_A == doctest::Approx(60.24).epsilon(0.01));
    // Lambda stretch exceeds A by exactly n^2
    CHECK(frames::oscillator_time_rate(0.0, kin, Polarization::Lambda) / rate_A ==
          doctest::Approx(1.459 * 1.459).epsilon(1e-13));
    // algebraic limit: dT/dtau -> 1/n^2 as n^2 v^2 grows
    frames::PulseKinematics fast{0.99, frames::Profile::constant(50.0)};
    CHECK(frames::oscillator_time_rate(0.0, fast, Polarization::A) ==
          doctest::Approx(1.0 / (50.0 * 50.0)).epsilon(1e-2));

    // strictly monotone along a pulse profile
    frames::PulseKinematics pulsed{kV, frames::Profile::gaussian(1.4595, 1e-3, 5.0)};
    double prev = frames::oscillator_time(-40.0, pulsed, Polarization::A);
    for (double tau = -35.0; tau <= 40.0; tau += 5.0) {
        const double T = frames::oscillator_time(tau, pulsed, Polarization::A);
        CHECK(T > prev);
        prev = T;
    }
    // linear closed form at constant n
    CHECK(frames::oscillator_time(2.0, kin, Polarization::A) ==
          doctest::Approx(2.0 * rate_A).epsilon(1e-12));
}

TEST_CASE("hubble parameters") {
    // static profile: both vanish
    frames::PulseKinematics still{kV, frames::Profile::constant(1.459)};
    const auto h0 = frames::hubble_parameters(still, 64);
    for (double tau : {-0.2, 0.0, 0.3}) {
        CHECK(h0.H_z(tau) == doctest::Approx(0.0));
        CHECK(h0.H_x(tau) == doctest::Approx(0.0));
    }

    frames::PulseKinematics pulsed{kV, frames::Profile::gaussian(1.459, 1e-3, 10.0)};
    const auto h = frames::hubble_parameters(pulsed);
    // ratio H_z/H_x = n^2 v^2/(n^2 v^2 - 1) wherever H_x != 0
    const double tau_probe = 8.0;
    const double n = pulsed.n_of_tau(tau_probe);
    const double f = n * n * kV * kV;
    CHECK(h.H_z(tau_probe) / h.H_x(tau_probe) == doctest::Approx(f / (f - 1.0)).epsilon(1e-6));
    CHECK(f / (f - 1.0) > 100.0);  // the anisotropy is two orders of magnitude
    // signs follow dn/dtau
    CHECK(h.H_x(8.0) * pulsed.n_of_tau.derivative(8.0) > 0.0);
    CHECK(h.H_x(-8.0) * pulsed.n_of_tau.derivative(-8.0) > 0.0);
}

TEST_CASE("lab mode map: dispersion consistency and inversion") {
    const double n0 = 1.4595, m0_sq = 0.208;
    const double g = n0 * n0 * kV * kV - 1.0;

    // zero mode maps to zero
    const auto zero = frames::lab_mode(0.0, 0.0, n0, kV);
    CHECK(zero.omega == 0.0);
    CHECK(zero.k_z == 0.0);

    // kappa = 0 still has nonzero k_z
    const double Om0 = n0 * std::sqrt(m0_sq) * std::sqrt(g) / kV;
    const auto lm = frames::lab_mode(Om0, 0.0, n0, kV);
    CHECK(lm.k_z != 0.0);
    CHECK(lm.k_z == doctest::Approx(kV * Om0 / g).epsilon(1e-13));

    // the mapped pair satisfies the constant-n lab dispersion for any
    // on-shell mode: n0^2 w^2 - k_z^2 = k_x^2 + n0^2 m0^2 (A polarization)
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pick(-1.0, 1.0);
    for (int i = 0; i < 32; ++i) {
        const double kappa = pick(rng), kx = pick(rng);
        const double Om_sq = n0 * n0 * kappa * kappa + (kx * kx + n0 * n0 * m0_sq) * g / (kV * kV);
        const auto lab = frames::lab_mode(std::sqrt(Om_sq), kappa, n0, kV);
        CHECK(n0 * n0 * lab.omega * lab.omega - lab.k_z * lab.k_z ==
              doctest::Approx(kx * kx + n0 * n0 * m0_sq).epsilon(1e-10));
        // round trip
        const auto [Om_back, kappa_back] = frames::lab_mode_inverse(lab, n0, kV);
        CHECK(Om_back == doctest::Approx(std::sqrt(Om_sq)).epsilon(1e-12));
        CHECK(kappa_back == doctest::Approx(kappa).epsilon(1e-12));
    }

    // Lambda map satisfies its own dispersion w^2 = (k_z^2+k_x^2)/n0^2 + m0^2
    for (int i = 0; i < 16; ++i) {
        const double kappa = pick(rng), kx = pick(rng);
        const double OmL_sq =
            kappa * kappa / (n0 * n0) + (kx * kx + n0 * n0 * m0_sq) * g / (std::pow(n0, 4) * kV * kV);
        const auto lab = frames::lab_mode(std::sqrt(OmL_sq), kappa, n0, kV, Polarization::Lambda);
        CHECK(lab.omega * lab.omega - (lab.k_z * lab.k_z + kx * kx) / (n0 * n0) ==
              doctest::Approx(m0_sq).epsilon(1e-10));
        const auto [Om_back, kappa_back] =
            frames::lab_mode_inverse(lab, n0, kV, Polarization::Lambda);
        CHECK(Om_back == doctest::Approx(std::sqrt(OmL_sq)).epsilon(1e-12));
        CHECK(kappa_back == doctest::Approx(kappa).epsilon(1e-12));
    }

    // linearity in (Omega0, kappa)
    const auto a = frames::lab_mode(0.3, 0.1, n0, kV);
    const auto b = frames::lab_mode(0.5, -0.2, n0, kV);
    const auto s = frames::lab_mode(0.3 + 0.5, 0.1 - 0.2, n0, kV);
    CHECK(s.omega == doctest::Approx(a.omega + b.omega).epsilon(1e-13));
    CHECK(s.k_z == doctest::Approx(a.k_z + b.k_z).epsilon(1e-13));
}

TEST_CASE("filament boost: pulse worldline and metric diagonalization") {
    const double n0 = 1.4595;
    const auto origin = frames::filament_boost(0.0, 0.0, kV, n0);
    CHECK(origin.tau == 0.0);
    CHECK(origin.rho == 0.0);

    // points on z = v t map to tau = 0
    for (double t : {-3.0, 1.0, 7.5}) {
        const auto c = frames::filament_boost(t, kV * t, kV, n0);
        CHECK(std::abs(c.tau) < 1e-12 * std::max(1.0, std::abs(t)));
    }

    // dtau^2 - drho^2 = dt^2 - n0^2 dz^2 for the linear map (random probes)
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int i = 0; i < 32; ++i) {
        const double dt = pick(rng), dz = pick(rng);
        const auto d = frames::filament_boost(dt, dz, kV, n0);
        CHECK(d.tau * d.tau - d.rho * d.rho ==
              doctest::Approx(dt * dt - n0 * n0 * dz * dz).epsilon(1e-11));
    }
    // nonzero Jacobian determinant: independent images of the basis vectors
    const auto e_t = frames::filament_boost(1.0, 0.0, kV, n0);
    const auto e_z = frames::filament_boost(0.0, 1.0, kV, n0);
    CHECK(std::abs(e_t.tau * e_z.rho - e_z.tau * e_t.rho) > 1e-6);
}

TEST_CASE("null cones agree for the two conformal metrics") {
    // (dt, dx, dz) = (n, 1, 0) is null for both
    const auto nn = frames::null_cone_check(1.5, 1.5, 1.0, 0.0);
    CHECK(nn.is_null_A);
    CHECK(nn.is_null_Lambda);
    const auto tl = frames::null_cone_check(1.5, 1.0, 0.0, 0.0);
    CHECK(!tl.is_null_A);
    CHECK(!tl.is_null_Lambda);

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> pick(-1.0, 1.0), npick(1.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        const double n = npick(rng);
        const double dt = pick(rng), dx = pick(rng), dz = pick(rng);
        const auto f = frames::null_cone_check(n, dt, dx, dz);
        CHECK(f.is_null_A == f.is_null_Lambda);
        // conformal relation holds pointwise
        const double n4 = n * n * n * n;
        CHECK(frames::ds2_Lambda(n, dt, dx, dz) * n4 ==
              doctest::Approx(frames::ds2_A(n, dt, dx, dz)).epsilon(1e-12));
    }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "pulselab/num/ode.hpp"
#include "pulselab/planar/planar.hpp"

using namespace pulselab;
using frames::Polarization;
using planar::Model;

constexpr double kTwoPi = 2.0 * M_PI;

namespace {

const double kV = 1.0 / 1.4533;
const double kN0 = 1.4595;
const double kM0Sq = 0.208;
const double kM0 = std::sqrt(kM0Sq);
const double kG = kN0 * kN0 * kV * kV - 1.0;

planar::PotentialTrace gaussian_trace(double Omega0, double dOmega, double sigma) {
    auto fn = [=](double T) {
        const double u = T / sigma;
        const double w = Omega0 + dOmega * std::exp(-0.5 * u * u);
        return w * w;
    };
    const double L = 9.0 * sigma;
    return planar::PotentialTrace::from_function(fn, -L, L, Omega0 * Omega0, Omega0 * Omega0);
}

}  // namespace

TEST_CASE("index-model potential: asymptotics and term dominance") {
    const auto n_prof = frames::Profile::gaussian(kN0, 1e-3, 10.0);

    // minimal mode: Omega0 = n0 m0 sqrt(g)/v, about 1/(11 um)
    const planar::PlanarModeLabel min_mode{0.0, 0.0, Polarization::A, Model::IndexVariation};
    const auto tr = planar::potential_model1(min_mode, n_prof, kV, kM0Sq);
    const double om0_expect = kN0 * kM0 * std::sqrt(kG) / kV;
    CHECK(tr.omega0() == doctest::Approx(om0_expect).epsilon(1e-10));
    CHECK(tr.omega0() == doctest::Approx(1.0 / 11.0).epsilon(0.10));
    CHECK(tr.omega0_sq_start == doctest::Approx(tr.omega0_sq_end).epsilon(1e-12));

    // zero perturbation gives a constant trace
    const auto flat =
        planar::potential_model1(min_mode, frames::Profile::gaussian(kN0, 0.0, 10.0), kV, kM0Sq);
    CHECK(flat.delta_omega_peak() == doctest::Approx(0.0).epsilon(1e-14));

    // at kappa = 1/um the n^2 kappa^2 term dominates the rest by > 100
    const double term1 = kN0 * kN0 * 1.0;
    const double term2 = (0.0 + kN0 * kN0 * kM0Sq) * kG / (kV * kV);
    CHECK(term1 / term2 > 100.0);
    const planar::PlanarModeLabel k1{1.0, 0.0, Polarization::A, Model::IndexVariation};
    const auto trk = planar::potential_model1(k1, n_prof, kV, kM0Sq);
    CHECK(trk.omega0() == doctest::Approx(std::sqrt(term1 + term2)).epsilon(1e-10));

    // the dual polarization sits exactly n0^2 below in frequency
    const planar::PlanarModeLabel min_L{0.0, 0.0, Polarization::Lambda, Model::IndexVariation};
    const auto trL = planar::potential_model1(min_L, n_prof, kV, kM0Sq);
    CHECK(trL.omega0() == doctest::Approx(om0_expect / (kN0 * kN0)).epsilon(1e-10));
}

TEST_CASE("index-model potential rejects subcritical profiles") {
    const planar::PlanarModeLabel mode{0.0, 0.0, Polarization::A, Model::IndexVariation};
    const auto bad = frames::Profile::gaussian(1.40, 1e-3, 5.0);  // n v < 1
    CHECK_THROWS_AS(planar::potential_model1(mode, bad, kV, kM0Sq), std::domain_error);
}

TEST_CASE("mass-model potential: peak shifts against the closed forms") {
    const planar::PlanarModeLabel modeA{0.0, 0.0, Polarization::A, Model::MassVariation};

    // zero variation: constant trace
    const auto flat =
        planar::potential_model2(modeA, frames::Profile::gaussian(kM0, 0.0, 10.0), kN0, kV);
    CHECK(flat.delta_omega_peak() == doctest::Approx(0.0).epsilon(1e-14));

    // at kappa = k_x = 0 the A potential is linear in the mass, so the peak
    // shift is exactly n0 sqrt(g)/v times the peak mass shift
    const double dm = -kTwoPi / 100.0;
    const auto m_prof = frames::Profile::gaussian(kM0, dm, 10.0);
    const auto trA = planar::potential_model2(modeA, m_prof, kN0, kV);
    const double coefA = kN0 * std::sqrt(kG) / kV;
    CHECK(trA.delta_omega_peak() == doctest::Approx(coefA * std::abs(dm)).epsilon(1e-9));
    // about 2 pi / 510, within a factor two of the quoted 2 pi / 560
    CHECK(kTwoPi / trA.delta_omega_peak() == doctest::Approx(509.85).epsilon(1e-3));

    // Lambda: own-clock shift is the matched equation-level variation
    // divided by n0^2, i.e. sqrt(g)/(n0 v) times |dm|
    const planar::PlanarModeLabel modeL{0.0, 0.0, Polarization::Lambda, Model::MassVariation};
    const auto trL = planar::potential_model2(modeL, m_prof, kN0, kV);
    CHECK(trL.delta_omega_peak() ==
          doctest::Approx(coefA * std::abs(dm) / (kN0 * kN0)).epsilon(1e-9));
    // in a common clock (rates differ by exactly n0^2) the two agree
    CHECK(trL.delta_omega_peak() * kN0 * kN0 ==
          doctest::Approx(trA.delta_omega_peak()).epsilon(1e-9));

    // non-positive mass anywhere is rejected
    CHECK_THROWS_AS(
        planar::potential_model2(modeA, frames::Profile::gaussian(kM0, -1.1 * kM0, 5.0), kN0, kV),
        std::domain_error);
}

TEST_CASE("mass shift from index shift") {
    const disp::MassiveField medium{kN0, kM0Sq};
    // the quoted conversion at omega = 2 pi / um
    const double dm = planar::delta_m_from_delta_n(1e-3, kTwoPi, medium);
    CHECK(dm == doctest::Approx(-kTwoPi / 100.0).epsilon(0.10));
    // zero maps to zero, positive delta_n lowers the mass
    CHECK(planar::delta_m_from_delta_n(0.0, kTwoPi, medium) == 0.0);
    CHECK(dm < 0.0);
    CHECK(planar::delta_m_from_delta_n(-1e-3, kTwoPi, medium) > 0.0);
    // evanescent carrier is rejected
    CHECK_THROWS_AS(planar::delta_m_from_delta_n(1e-3, 0.1, medium), disp::EvanescentError);
}

TEST_CASE("perturbative mixing: Gaussian oracle and linearity") {
    const double Om0 = 1.3, sigma = 1.1, dOm = 1e-3 * Om0;
    const auto tr = gaussian_trace(Om0, dOm, sigma);
    const auto res = planar::beta_perturbative(tr);
    const double expect = std::sqrt(kTwoPi) * sigma * dOm * std::exp(-2.0 * Om0 * Om0 * sigma * sigma);
    CHECK(std::abs(res.beta) == doctest::Approx(expect).epsilon(1e-3));
    CHECK(res.alpha == num::Complex{1.0, 0.0});
    CHECK(res.warnings.empty());

    // first-order linearity: scaling the perturbation scales beta
    const auto res3 = planar::beta_perturbative(gaussian_trace(Om0, 3.0 * dOm, sigma));
    CHECK(std::abs(res3.beta - 3.0 * res.beta) <= 1e-12 * std::abs(res3.beta) + 1e-18);

    // zero perturbation: beta identically zero
    const auto zero = planar::beta_perturbative(gaussian_trace(Om0, 0.0, sigma));
    CHECK(zero.beta == num::Complex{0.0, 0.0});

    // validity guard attaches a warning but still returns the value
    const auto loud = planar::beta_perturbative(gaussian_trace(Om0, 0.5 * Om0, sigma));
    CHECK(!loud.warnings.empty());
}

TEST_CASE("perturbative mixing: deep suppression regime") {
    // Omega0 ~ 0.09/um with a millimetre-scale envelope: the amplitude is
    // exponentially negligible and reported below resolution
    const double Om0 = 0.09, sigma = 550.0, dOm = 7e-3;
    const auto res = planar::beta_perturbative(gaussian_trace(Om0, dOm, sigma));
    CHECK(res.beta_abs2 < 1e-30);
    CHECK(res.below_resolution);
}

TEST_CASE("exact mixing: constant, sudden and smooth traces") {
    // constant trace: exactly no mixing
    auto flat = planar::PotentialTrace::from_function([](double) { return 2.25; }, -10.0, 10.0,
                                                      2.25, 2.25);
    const auto none = planar::bogoliubov_exact(flat);
    CHECK(none.alpha == num::Complex{1.0, 0.0});
    CHECK(none.beta == num::Complex{0.0, 0.0});

    // steep tanh step: the sudden-approximation oracle
    const double w1 = 1.0, w2 = 2.0, width = 0.004 / w2;
    auto step_fn = [=](double T) {
        return w1 * w1 + (w2 * w2 - w1 * w1) * 0.5 * (1.0 + std::tanh(T / width));
    };
    auto step = planar::PotentialTrace::from_function(step_fn, -12.0, 12.0, w1 * w1, w2 * w2);
    const auto mixed = planar::bogoliubov_exact(step, {1e-11, 1e-13});
    REQUIRE(mixed.reliable);
    const double oracle = (w2 - w1) / (2.0 * std::sqrt(w1 * w2));
    CHECK(std::abs(mixed.beta) == doctest::Approx(oracle).epsilon(0.01));
    CHECK(std::abs(mixed.normalization_defect) < 1e-8);

    // smooth weak Gaussian: perturbative and exact agree to 5%
    const double Om0 = 1.0, sigma = 1.5, dOm = 1e-3;
    const auto tr = gaussian_trace(Om0, dOm, sigma);
    const auto pert = planar::beta_perturbative(tr);
    const auto exact = planar::bogoliubov_exact(tr, {1e-11, 1e-14});
    REQUIRE(std::abs(pert.beta) > 1e-13);
    CHECK(std::abs(std::abs(exact.beta) - std::abs(pert.beta)) / std::abs(pert.beta) < 0.05);
}

TEST_CASE("spectrum sweep: ordering, peak location and suppression") {
    planar::PlanarScenario sc;
    sc.model = Model::IndexVariation;
    sc.v = kV;
    sc.n0 = kN0;
    sc.m0_sq = kM0Sq;
    sc.delta_n0 = 1e-3;
    sc.delta_tau = 0.3;  // fast envelope so the minimal mode is measurable
    sc.trace_samples = 1501;

    const std::vector<double> kappas{0.0, 0.05};
    const std::vector<double> kxs{0.0, 1.0, kTwoPi / kN0};
    const auto rows = planar::spectrum_sweep(sc, kappas, kxs, planar::Method::Perturbative);
    REQUIRE(rows.size() == 6);

    // the minimal mode carries the grid maximum
    double peak = 0.0;
    for (const auto& r : rows) peak = std::max(peak, r.result.beta_abs2);
    CHECK(rows[0].mode.kappa == 0.0);
    CHECK(rows[0].mode.k_x == 0.0);
    CHECK(rows[0].result.beta_abs2 == doctest::Approx(peak));

    // beta falls monotonically along the k_x grid
    CHECK(rows[0].result.beta_abs2 > rows[1].result.beta_abs2);
    CHECK(rows[1].result.beta_abs2 > rows[2].result.beta_abs2);
    // an optical transverse wavenumber suppresses by many orders
    CHECK(rows[2].result.beta_abs2 < 1e-10 * rows[0].result.beta_abs2);

    // empty grid: empty spectrum
    CHECK(planar::spectrum_sweep(sc, {}, kxs, planar::Method::Perturbative).empty());

    // worker count must not change a single byte of the result
    const auto rows4 = planar::spectrum_sweep(sc, kappas, kxs, planar::Method::Perturbative, 4);
    REQUIRE(rows4.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows4[i].result.beta == rows[i].result.beta);
        CHECK(rows4[i].Omega0 == rows[i].Omega0);
    }
}

TEST_CASE("the two models disagree at matched index amplitude") {
    // same delta_n, same envelope, same mode: the creation rates differ
    const double delta_n = 1e-3, delta_tau = 0.3;
    const disp::MassiveField medium{kN0, kM0Sq};

    planar::PlanarScenario sc1;
    sc1.model = Model::IndexVariation;
    sc1.v = kV;
    sc1.n0 = kN0;
    sc1.m0_sq = kM0Sq;
    sc1.delta_n0 = delta_n;
    sc1.delta_tau = delta_tau;

    planar::PlanarScenario sc2 = sc1;
    sc2.model = Model::MassVariation;
    sc2.delta_n0 = 0.0;
    sc2.delta_m0 = planar::delta_m_from_delta_n(delta_n, kTwoPi, medium);

    const planar::PlanarModeLabel m1{0.0, 0.0, Polarization::A, Model::IndexVariation};
    const planar::PlanarModeLabel m2{0.0, 0.0, Polarization::A, Model::MassVariation};
    const auto b1 = planar::beta_perturbative(planar::build_potential(m1, sc1));
    const auto b2 = planar::beta_perturbative(planar::build_potential(m2, sc2));
    REQUIRE(b1.beta_abs2 > 1e-26);
    REQUIRE(b2.beta_abs2 > 1e-26);
    CHECK(std::abs(b1.beta_abs2 - b2.beta_abs2) / b2.beta_abs2 > 0.01);
}

TEST_CASE("exact solver normalization on random smooth potentials") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> om(0.6, 2.5), amp(-0.15, 0.15), wid(0.6, 2.0);
    for (int i = 0; i < 10; ++i) {
        const double Om0 = om(rng), a = amp(rng), s = wid(rng);
        const auto tr = gaussian_trace(Om0, a * Om0, s);
        const auto res = planar::bogoliubov_exact(tr, {1e-11, 1e-14});
        REQUIRE(res.reliable);
        CHECK(std::abs(res.normalization_defect) < 1e-8);
    }
}

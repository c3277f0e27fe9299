#include "pulselab/disp/dispersion.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace pulselab::disp {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

SellmeierSilica SellmeierSilica::fused_silica() {
    SellmeierSilica s;
    s.B = {0.6961663, 0.4079426, 0.8974794};
    const double c1 = 0.0684043, c2 = 0.1162414, c3 = 9.896161;
    s.C = {c1 * c1, c2 * c2, c3 * c3};
    return s;
}

double sellmeier_index(const SellmeierSilica& model, double lambda_um) {
    if (!(lambda_um >= model.lambda_min && lambda_um <= model.lambda_max))
        throw std::invalid_argument("sellmeier_index: wavelength outside validity window");
    const double l2 = lambda_um * lambda_um;
    double n2 = 1.0;
    for (int i = 0; i < 3; ++i) {
        const double den = l2 - model.C[i];
        if (std::abs(den) < 1e-12)
            throw std::invalid_argument("sellmeier_index: wavelength at a resonance pole");
        n2 += model.B[i] * l2 / den;
    }
    return std::sqrt(n2);
}

double sellmeier_index_derivative(const SellmeierSilica& model, double lambda_um) {
    // d(n^2)/d(l^2) = sum -B_i C_i / (l^2 - C_i)^2 ;  dn/dl = l/n * d(n^2)/d(l^2)
    const double l2 = lambda_um * lambda_um;
    double dn2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double den = l2 - model.C[i];
        dn2 += -model.B[i] * model.C[i] / (den * den);
    }
    return lambda_um / sellmeier_index(model, lambda_um) * dn2;
}

double sellmeier_group_index(const SellmeierSilica& model, double lambda_um) {
    return sellmeier_index(model, lambda_um) -
           lambda_um * sellmeier_index_derivative(model, lambda_um);
}

bool massive_propagating(const MassiveField& model, double lambda_um) {
    if (!(lambda_um > 0.0)) throw std::invalid_argument("massive_propagating: lambda must be > 0");
    const double omega = kTwoPi / lambda_um;
    return omega * omega > model.m0_sq;
}

double massive_phase_index(const MassiveField& model, double lambda_um) {
    model.validate();
    if (!(lambda_um > 0.0)) throw std::invalid_argument("massive_phase_index: lambda must be > 0");
    const double omega = kTwoPi / lambda_um;
    if (!(omega * omega > model.m0_sq))
        throw EvanescentError("massive_phase_index: evanescent (lab frequency below mass cutoff)");
    // in-medium wavenumber from w^2 = k^2/n0^2 + m0^2, solved by bisection
    const double n0sq = model.n0 * model.n0;
    auto f = [&](double k) { return k * k / n0sq + model.m0_sq - omega * omega; };
    double lo = 0.0, hi = 10.0 * model.n0 * omega;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) hi = mid; else lo = mid;
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
    }
    const double k = 0.5 * (lo + hi);
    return k / omega;
}

double massive_group_index(const MassiveField& model, double lambda_um) {
    // dw/dk = k/(n0^2 w)  =>  n_g = n0^2 / n_eff exactly
    return model.n0 * model.n0 / massive_phase_index(model, lambda_um);
}

MassiveField fit_massive_model(const SellmeierSilica& silica, double knot1_um, double knot2_um) {
    if (knot1_um == knot2_um)
        throw std::invalid_argument("fit_massive_model: knots must be distinct");
    const double n1 = sellmeier_index(silica, knot1_um);
    const double n2 = sellmeier_index(silica, knot2_um);

    // The exact dispersion gives n_eff^2 = n0^2 - n0^2 m0^2 l^2/(4 pi^2),
    // linear in l^2 -> closed-form start, then Newton against the bisection
    // root to drive the residual below 1e-10.
    const double l1sq = knot1_um * knot1_um, l2sq = knot2_um * knot2_um;
    const double slope = (n1 * n1 - n2 * n2) / (l2sq - l1sq);
    const double n0sq = n1 * n1 + slope * l1sq;
    double m0sq = 4.0 * M_PI * M_PI * slope / n0sq;
    if (!(m0sq > 0.0) || !(n0sq > 1.0))
        throw std::domain_error("fit_massive_model: no positive-m0^2 solution for these knots");

    MassiveField m{std::sqrt(n0sq), m0sq};
    for (int it = 0; it < 50; ++it) {
        const double r1 = massive_phase_index(m, knot1_um) - n1;
        const double r2 = massive_phase_index(m, knot2_um) - n2;
        if (std::max(std::abs(r1), std::abs(r2)) < 1e-12) break;
        const double hn = 1e-8, hm = 1e-8;
        MassiveField mn{m.n0 + hn, m.m0_sq}, mm{m.n0, m.m0_sq + hm};
        Eigen::Matrix2d J;
        J << (massive_phase_index(mn, knot1_um) - n1 - r1) / hn,
             (massive_phase_index(mm, knot1_um) - n1 - r1) / hm,
             (massive_phase_index(mn, knot2_um) - n2 - r2) / hn,
             (massive_phase_index(mm, knot2_um) - n2 - r2) / hm;
        const Eigen::Vector2d step = J.partialPivLu().solve(Eigen::Vector2d(r1, r2));
        m.n0 -= step[0];
        m.m0_sq -= step[1];
        if (!(m.m0_sq > 0.0))
            throw std::domain_error("fit_massive_model: iteration left the positive-m0^2 domain");
    }
    const double res = std::max(std::abs(massive_phase_index(m, knot1_um) - n1),
                                std::abs(massive_phase_index(m, knot2_um) - n2));
    if (res > 1e-10)
        throw std::runtime_error("fit_massive_model: residual above 1e-10 after Newton");
    return m;
}

MassiveField lambda_variant(const MassiveField& model) {
    const double n4 = model.n0 * model.n0 * model.n0 * model.n0;
    return MassiveField{model.n0, model.m0_sq * n4};
}

double DispersionModel::phase_index(double lambda_um) const {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SellmeierSilica>)
                return sellmeier_index(m, lambda_um);
            else
                return massive_phase_index(m, lambda_um);
        },
        model);
}

HorizonBand phase_horizon_band(const DispersionModel& outside, double delta_n, double v,
                               double window_lo_um, double window_hi_um) {
    if (!(delta_n >= 0.0)) throw std::invalid_argument("phase_horizon_band: delta_n must be >= 0");
    if (!(window_lo_um < window_hi_um))
        throw std::invalid_argument("phase_horizon_band: empty search window");
    // band where 1/n > v and 1/(n + delta_n) < v, i.e. n in (1/v - delta_n, 1/v)
    const double n_hi = 1.0 / v;
    const double n_lo = n_hi - delta_n;
    auto inside = [&](double lam) {
        const double n = outside.phase_index(lam);
        return n < n_hi && n > n_lo;
    };
    const int kScan = 4000;
    double lo = 0.0, hi = 0.0;
    bool found = false;
    double prev_lam = window_lo_um;
    bool prev_in = inside(prev_lam);
    if (prev_in) { lo = prev_lam; found = true; }
    auto bisect_edge = [&](double a, double b, bool want_entering) {
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (a + b);
            if (inside(mid) == want_entering) b = mid; else a = mid;
        }
        return 0.5 * (a + b);
    };
    for (int i = 1; i <= kScan; ++i) {
        const double lam = window_lo_um + (window_hi_um - window_lo_um) * i / kScan;
        const bool in = inside(lam);
        if (in && !prev_in && !found) {
            lo = bisect_edge(prev_lam, lam, true);
            found = true;
        } else if (!in && prev_in && found) {
            hi = bisect_edge(prev_lam, lam, false);
            return HorizonBand{lo, hi, false};
        }
        prev_in = in;
        prev_lam = lam;
    }
    if (found) return HorizonBand{lo, window_hi_um, false};
    return HorizonBand{};
}

std::vector<Fig1Row> fig1_table(const SellmeierSilica& silica, const MassiveField& massive,
                                double lo_um, double hi_um, int samples) {
    if (samples < 2) throw std::invalid_argument("fig1_table: need at least 2 samples");
    if (!(lo_um < hi_um)) throw std::invalid_argument("fig1_table: bad range");
    std::vector<Fig1Row> rows;
    rows.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double lam = lo_um + (hi_um - lo_um) * i / (samples - 1);
        Fig1Row r;
        r.lambda_um = lam;
        r.n_p_silica = sellmeier_index(silica, lam);
        r.n_g_silica = sellmeier_group_index(silica, lam);
        r.n_p_massive = massive_phase_index(massive, lam);
        r.n_g_massive = massive_group_index(massive, lam);
        r.n_c_silica = std::sqrt(r.n_p_silica * r.n_g_silica);
        r.n0 = massive.n0;  // sqrt(n_p n_g) is exactly n0 for the massive model
        rows.push_back(r);
    }
    return rows;
}

}  // namespace pulselab::disp

#include "pulselab/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "pulselab/disp/dispersion.hpp"
#include "pulselab/filament/filament.hpp"
#include "pulselab/io/csv.hpp"
#include "pulselab/io/svg.hpp"
#include "pulselab/num/tolerance.hpp"
#include "pulselab/planar/planar.hpp"
#include "pulselab/report/report.hpp"

namespace pulselab::app {

namespace {

using json = nlohmann::ordered_json;
constexpr double kTwoPi = 2.0 * M_PI;

std::string pol_name(frames::Polarization p) {
    return p == frames::Polarization::A ? "A" : "Lambda";
}
std::string model_name(io::ModelKind m) {
    return m == io::ModelKind::Index ? "index" : "mass";
}
std::string method_name(planar::Method m) {
    return m == planar::Method::Perturbative ? "perturbative" : "exact";
}

disp::MassiveField resolve_dispersion(const io::ScenarioConfig& cfg) {
    if (cfg.fit_knots) {
        const auto silica = disp::SellmeierSilica::fused_silica();
        return disp::fit_massive_model(silica, cfg.fit_knots->first, cfg.fit_knots->second);
    }
    return disp::MassiveField{cfg.n0, cfg.m0_sq};
}

std::string classify_direction(double k_z, double k_x) {
    const double az = std::abs(k_z), ax = std::abs(k_x);
    if (az == 0.0 && ax == 0.0) return "undefined";
    if (az >= 3.0 * ax) return "longitudinal";
    if (ax >= 3.0 * az) return "perpendicular";
    return "oblique";
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

ScenarioOutput execute_planar(const io::ScenarioConfig& cfg) {
    ScenarioOutput out;
    const auto medium = resolve_dispersion(cfg);

    planar::PlanarScenario sc;
    sc.model = cfg.model == io::ModelKind::Index ? planar::Model::IndexVariation
                                                 : planar::Model::MassVariation;
    sc.v = cfg.v;
    sc.n0 = medium.n0;
    sc.m0_sq = medium.m0_sq;
    sc.delta_tau = cfg.delta_tau;
    sc.tol = num::Tolerance{cfg.tol_rel, cfg.tol_abs};
    if (sc.model == planar::Model::IndexVariation) {
        sc.delta_n0 = cfg.delta_n0;
    } else {
        sc.delta_m0 = cfg.delta_m0 != 0.0
                          ? cfg.delta_m0
                          : planar::delta_m_from_delta_n(cfg.delta_n0, cfg.convert_omega, medium);
    }

    std::vector<frames::Polarization> pols;
    if (cfg.polarization == io::PolChoice::A) pols = {frames::Polarization::A};
    else if (cfg.polarization == io::PolChoice::Lambda) pols = {frames::Polarization::Lambda};
    else pols = {frames::Polarization::A, frames::Polarization::Lambda};

    std::vector<planar::Method> methods;
    if (cfg.method == io::MethodChoice::Perturbative) methods = {planar::Method::Perturbative};
    else if (cfg.method == io::MethodChoice::Exact) methods = {planar::Method::Exact};
    else methods = {planar::Method::Perturbative, planar::Method::Exact};

    io::CsvWriter csv({"model", "polarization", "kappa", "k_x", "Omega0", "omega_lab", "k_z_lab",
                       "beta_abs2", "method", "flag"});

    struct Key {
        double kappa, kx;
        frames::Polarization pol;
        bool operator<(const Key& o) const {
            return std::tie(kappa, kx, pol) < std::tie(o.kappa, o.kx, o.pol);
        }
    };
    std::map<Key, std::map<planar::Method, double>> per_mode_beta;

    std::size_t failed = 0, total = 0;
    double peak = -1.0;
    bool peak_above_floor = false;
    json peak_info;
    for (auto pol : pols) {
        planar::PlanarScenario sp = sc;
        sp.pol = pol;
        for (auto method : methods) {
            const auto rows = planar::spectrum_sweep(sp, cfg.kappa_grid, cfg.kx_grid, method,
                                                     cfg.threads);
            for (const auto& row : rows) {
                ++total;
                const bool ok = row.flag.rfind("failed", 0) != 0;
                if (!ok) ++failed;
                csv.add_row({model_name(cfg.model), pol_name(pol), io::fmt_sci(row.mode.kappa),
                             io::fmt_sci(row.mode.k_x), io::fmt_sci(row.Omega0),
                             io::fmt_sci(row.lab.omega), io::fmt_sci(row.lab.k_z),
                             io::fmt_sci(row.result.beta_abs2), method_name(method), row.flag});
                if (ok) {
                    per_mode_beta[Key{row.mode.kappa, row.mode.k_x, pol}][method] =
                        row.result.beta_abs2;
                    // measured modes outrank below-resolution ones for the peak
                    const bool above = !row.result.below_resolution;
                    if ((above && !peak_above_floor) ||
                        (above == peak_above_floor && row.result.beta_abs2 > peak)) {
                        peak = row.result.beta_abs2;
                        peak_above_floor = above;
                        peak_info = json{{"beta_abs2", row.result.beta_abs2},
                                         {"kappa", row.mode.kappa},
                                         {"k_x", row.mode.k_x},
                                         {"Omega0", row.Omega0},
                                         {"omega_lab", row.lab.omega},
                                         {"k_z_lab", row.lab.k_z},
                                         {"polarization", pol_name(pol)},
                                         {"method", method_name(method)},
                                         {"direction",
                                          classify_direction(row.lab.k_z, row.mode.k_x)}};
                    }
                }
            }
        }
    }

    json summary;
    summary["schema_version"] = 1;
    summary["geometry"] = "planar";
    summary["model"] = model_name(cfg.model);
    summary["modes_total"] = total;
    summary["modes_failed"] = failed;
    if (peak >= 0.0) {
        summary["peak"] = peak_info;
        const std::string dir = peak_info["direction"];
        summary["emission"] = dir == "longitudinal" ? "predominantly longitudinal"
                              : dir == "perpendicular" ? "predominantly perpendicular"
                                                       : dir;
    }
    if (methods.size() == 2) {
        double max_dev = 0.0;
        std::size_t compared = 0;
        json per_mode = json::array();
        for (const auto& [key, by_method] : per_mode_beta) {
            if (by_method.size() != 2) continue;
            const double p = by_method.at(planar::Method::Perturbative);
            const double e = by_method.at(planar::Method::Exact);
            if (p > 1e-26) {  // both above the squared noise floor
                max_dev = std::max(max_dev, std::abs(e - p) / p);
                ++compared;
                per_mode.push_back(json{{"kappa", key.kappa},
                                        {"k_x", key.kx},
                                        {"polarization", pol_name(key.pol)},
                                        {"ratio_exact_over_perturbative", e / p}});
            }
        }
        summary["method_agreement"] = json{
            {"compared", compared}, {"max_rel_dev", max_dev}, {"per_mode", per_mode}};
    }

    out.spectrum_csv = csv.str();
    out.summary_json = summary.dump(2) + "\n";
    out.exit_code = (total > 0 && failed == total) ? 2 : 0;

    if (cfg.svg) {
        std::vector<io::PlotSeries> series;
        for (auto pol : pols) {
            for (double kappa : cfg.kappa_grid) {
                io::PlotSeries s;
                s.label = "kappa=" + io::fmt_sci(kappa).substr(0, 8) + " " + pol_name(pol);
                s.dashed = pol == frames::Polarization::Lambda;
                for (double kx : cfg.kx_grid) {
                    auto it = per_mode_beta.find(Key{kappa, kx, pol});
                    if (it == per_mode_beta.end() || it->second.empty()) continue;
                    s.x.push_back(kx);
                    s.y.push_back(it->second.begin()->second);
                }
                if (!s.x.empty()) series.push_back(std::move(s));
            }
        }
        if (!series.empty()) {
            io::PlotSpec spec;
            spec.title = "pair-creation probability per mode";
            spec.x_label = "k_x (1/um)";
            spec.y_label = "|beta|^2";
            spec.log_y = true;
            out.svg = io::render_svg(series, spec);
        }
    }
    return out;
}

ScenarioOutput execute_filament(const io::ScenarioConfig& cfg) {
    ScenarioOutput out;
    const auto medium = resolve_dispersion(cfg);

    filament::FilamentPulse pulse;
    pulse.delta_r = cfg.delta_r;
    pulse.delta_tau = cfg.delta_tau;
    double dm = cfg.delta_m0;
    if (dm == 0.0 && cfg.delta_n0 != 0.0) {
        const double conv_omega = cfg.substructure ? cfg.omega_in : cfg.convert_omega;
        dm = planar::delta_m_from_delta_n(cfg.delta_n0, conv_omega, medium);
    }
    pulse.delta_m0 = dm;

    json sub_info;
    if (cfg.substructure) {
        const auto sub = filament::substructure_profile(
            cfg.delta_n0, cfg.delta_t_lab, cfg.delta_r, cfg.v, medium.n0, cfg.v_ph,
            cfg.cone_angle_deg * M_PI / 180.0, cfg.omega_in, cfg.apply_cone_correction);
        pulse.delta_tau = sub.sigma_tau;
        pulse.carrier_omega_tau = sub.omega_tau;
        sub_info = json{{"omega_tau", sub.omega_tau},
                        {"omega_rho", sub.omega_rho},
                        {"sigma_tau", sub.sigma_tau},
                        {"v_ph_effective", sub.v_ph_effective}};
    }
    pulse.validate();

    io::CsvWriter csv({"Omega", "kappa", "k_r", "Omega_prime", "k_r_prime", "polarization",
                       "amp_re", "amp_im", "amp_abs2_per_length"});

    std::vector<frames::Polarization> pols;
    if (cfg.polarization == io::PolChoice::A) pols = {frames::Polarization::A};
    else if (cfg.polarization == io::PolChoice::Lambda) pols = {frames::Polarization::Lambda};
    else pols = {frames::Polarization::A, frames::Polarization::Lambda};

    json rates = json::array();
    std::size_t failed = 0, total = 0;
    double peak_rate = -1.0;
    json peak_info;
    std::vector<io::PlotSeries> series;

    for (auto pol : pols) {
        for (double kappa : cfg.kappa_grid) {
            io::PlotSeries s;
            s.label = "kappa=" + io::fmt_sci(kappa).substr(0, 8) + " " + pol_name(pol);
            s.dashed = pol == frames::Polarization::Lambda;
            for (double kr : cfg.kr_grid) {
                ++total;
                try {
                    const num::Tolerance tol{cfg.tol_rel, cfg.tol_abs};
                    const auto fin =
                        filament::cylinder_mode_from_kr(kappa, kr, medium.n0, medium.m0_sq, pol);
                    for (double kri : cfg.kr_initial_grid) {
                        const auto init = filament::cylinder_mode_from_kr(
                            -kappa, kri, medium.n0, medium.m0_sq, pol);
                        const auto amp = filament::pair_amplitude(fin, init, pulse, tol);
                        csv.add_row({io::fmt_sci(fin.Omega), io::fmt_sci(fin.kappa),
                                     io::fmt_sci(fin.k_r), io::fmt_sci(init.Omega),
                                     io::fmt_sci(init.k_r), pol_name(pol),
                                     io::fmt_sci(amp.amplitude_density.real()),
                                     io::fmt_sci(amp.amplitude_density.imag()),
                                     io::fmt_sci(amp.abs2 / kTwoPi)});
                    }
                    const auto prob =
                        filament::total_probability(fin, cfg.kr_initial_grid, pulse, tol);
                    rates.push_back(json{{"kappa", kappa},
                                         {"k_r", kr},
                                         {"Omega", fin.Omega},
                                         {"polarization", pol_name(pol)},
                                         {"rate_per_length", prob.rate_per_length},
                                         {"coverage_ok", prob.coverage_ok}});
                    s.x.push_back(kr);
                    s.y.push_back(prob.rate_per_length);
                    if (prob.rate_per_length > peak_rate) {
                        peak_rate = prob.rate_per_length;
                        peak_info = rates.back();
                    }
                } catch (const std::exception& e) {
                    ++failed;
                    rates.push_back(json{{"kappa", kappa},
                                         {"k_r", kr},
                                         {"polarization", pol_name(pol)},
                                         {"error", e.what()}});
                }
            }
            if (!s.x.empty()) series.push_back(std::move(s));
        }
    }

    json summary;
    summary["schema_version"] = 1;
    summary["geometry"] = "filament";
    summary["model"] = model_name(cfg.model);
    summary["delta_m0"] = pulse.delta_m0;
    summary["delta_tau"] = pulse.delta_tau;
    if (!sub_info.is_null()) summary["substructure"] = sub_info;
    summary["modes_total"] = total;
    summary["modes_failed"] = failed;
    if (peak_rate >= 0.0) summary["peak"] = peak_info;
    summary["rates"] = rates;

    out.spectrum_csv = csv.str();
    out.summary_json = summary.dump(2) + "\n";
    out.exit_code = (total > 0 && failed == total) ? 2 : 0;

    if (cfg.svg && !series.empty()) {
        io::PlotSpec spec;
        spec.title = "pair-creation rate per unit pulse length";
        spec.x_label = "k_r (1/um)";
        spec.y_label = "rate per length (1/um)";
        spec.log_y = true;
        out.svg = io::render_svg(series, spec);
    }
    return out;
}

}  // namespace

ScenarioOutput execute_scenario(const io::ScenarioConfig& cfg) {
    return cfg.geometry == io::Geometry::Planar ? execute_planar(cfg) : execute_filament(cfg);
}

int run_scenario(const io::ScenarioConfig& cfg) {
    const auto out = execute_scenario(cfg);
    ensure_dir(cfg.out_dir);
    const std::string base = cfg.out_dir + "/";
    write_text(base + "spectrum.csv", out.spectrum_csv);
    write_text(base + "summary.json", out.summary_json);
    if (out.svg) write_text(base + "spectrum.svg", *out.svg);
    std::cout << "wrote " << base << "spectrum.csv, summary.json"
              << (out.svg ? ", spectrum.svg" : "") << "\n";
    return out.exit_code;
}

int run_reproduce(const std::string& out_dir) {
    const auto rep = report::reproduce_reference_numbers();
    std::cout << report::render_text(rep);

    ensure_dir(out_dir);
    io::CsvWriter csv({"name", "location", "reference", "computed", "tolerance", "pass", "note"});
    json rows = json::array();
    for (const auto& r : rep.rows) {
        csv.add_row({r.name, r.location, io::fmt_sci(r.reference), io::fmt_sci(r.computed),
                     r.tolerance, r.pass ? "true" : "false", r.note});
        rows.push_back(json{{"name", r.name},
                            {"location", r.location},
                            {"reference", r.reference},
                            {"computed", r.computed},
                            {"tolerance", r.tolerance},
                            {"pass", r.pass},
                            {"note", r.note}});
    }
    json doc;
    doc["schema_version"] = 1;
    doc["all_pass"] = rep.all_pass();
    doc["rows"] = rows;
    csv.write(out_dir + "/reproduce.csv");
    write_text(out_dir + "/reproduce.json", doc.dump(2) + "\n");
    return rep.all_pass() ? 0 : 2;
}

int run_fig1(double lo_um, double hi_um, int samples, const std::string& out_dir, bool svg) {
    const auto silica = disp::SellmeierSilica::fused_silica();
    const auto massive = disp::fit_massive_model(silica, 0.7, 1.1);
    const auto rows = disp::fig1_table(silica, massive, lo_um, hi_um, samples);

    ensure_dir(out_dir);
    io::CsvWriter csv({"lambda_um", "n_p_silica", "n_g_silica", "n_p_massive", "n_g_massive",
                       "n_c_silica", "n0"});
    std::vector<io::PlotSeries> series(6);
    const char* labels[6] = {"n_p silica",  "n_g silica",  "n_p massive",
                             "n_g massive", "n_c silica",  "n0 (massive n_c)"};
    for (int i = 0; i < 6; ++i) {
        series[i].label = labels[i];
        series[i].dashed = (i == 2 || i == 3 || i == 5);
    }
    for (const auto& r : rows) {
        csv.add_row({io::fmt_sci(r.lambda_um), io::fmt_sci(r.n_p_silica), io::fmt_sci(r.n_g_silica),
                     io::fmt_sci(r.n_p_massive), io::fmt_sci(r.n_g_massive),
                     io::fmt_sci(r.n_c_silica), io::fmt_sci(r.n0)});
        const double ys[6] = {r.n_p_silica, r.n_g_silica, r.n_p_massive,
                              r.n_g_massive, r.n_c_silica, r.n0};
        for (int i = 0; i < 6; ++i) {
            series[i].x.push_back(r.lambda_um);
            series[i].y.push_back(ys[i]);
        }
    }
    csv.write(out_dir + "/fig1.csv");
    if (svg) {
        io::PlotSpec spec;
        spec.title = "effective refractive indices";
        spec.x_label = "free-space wavelength (um)";
        spec.y_label = "index";
        io::write_svg(out_dir + "/fig1.svg", series, spec);
    }
    std::cout << "wrote " << out_dir << "/fig1.csv" << (svg ? " and fig1.svg" : "") << "\n";
    return 0;
}

int run_fit(double knot1_um, double knot2_um) {
    const auto silica = disp::SellmeierSilica::fused_silica();
    const auto fit = disp::fit_massive_model(silica, knot1_um, knot2_um);
    const auto variant = disp::lambda_variant(fit);
    json doc;
    doc["knots_um"] = {knot1_um, knot2_um};
    doc["n0"] = fit.n0;
    doc["m0_sq"] = fit.m0_sq;
    doc["m_lambda_sq"] = variant.m0_sq;
    doc["residual_knot1"] =
        disp::massive_phase_index(fit, knot1_um) - disp::sellmeier_index(silica, knot1_um);
    doc["residual_knot2"] =
        disp::massive_phase_index(fit, knot2_um) - disp::sellmeier_index(silica, knot2_um);
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace pulselab::app

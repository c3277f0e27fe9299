// pulselab command-line front end.
//
// Subcommands:
//   run <config>   execute a scenario file, write CSV/JSON/SVG reports
//   reproduce      regenerate the reference estimates with pass/fail flags
//   fig1           dispersion comparison table and plot
//   fit            two-point massive-model fit
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure.

#include <CLI11.hpp>
#include <iostream>

#include "pulselab/app/runner.hpp"
#include "pulselab/io/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pulselab - particle creation by superluminal index pulses"};
    app.require_subcommand(1);

    // run
    std::string config_path;
    std::string out_dir_override;
    std::string method_override;
    double tol_override = 0.0;
    int threads_override = 0;
    bool svg_on = false, svg_off = false;
    auto* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out-dir", out_dir_override, "override output directory");
    run->add_option("--method", method_override, "perturbative | exact | both");
    run->add_option("--tol", tol_override, "override relative tolerance");
    run->add_option("--threads", threads_override, "worker count for sweeps");
    run->add_flag("--svg", svg_on, "force SVG output on");
    run->add_flag("--no-svg", svg_off, "force SVG output off");

    // reproduce
    std::string repro_out = "out";
    auto* repro = app.add_subcommand("reproduce", "regenerate reference estimates");
    repro->add_option("--out-dir", repro_out, "output directory");

    // fig1
    std::vector<double> range{0.5, 1.6};
    int samples = 121;
    std::string fig1_out = "out";
    bool fig1_svg_off = false;
    auto* fig1 = app.add_subcommand("fig1", "dispersion comparison table");
    fig1->add_option("--range", range, "wavelength range, um")->expected(2);
    fig1->add_option("--samples", samples, "row count");
    fig1->add_option("--out-dir", fig1_out, "output directory");
    fig1->add_flag("--no-svg", fig1_svg_off, "skip the SVG plot");

    // fit
    std::vector<double> knots{0.7, 1.1};
    auto* fit = app.add_subcommand("fit", "two-point massive-model fit");
    fit->add_option("--knots", knots, "fit wavelengths, um")->expected(2);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto outcome = pulselab::io::parse_config(config_path);
            if (!outcome.errors.empty()) {
                for (const auto& e : outcome.errors) {
                    std::cerr << "config error";
                    if (e.line > 0) std::cerr << " (line " << e.line << ")";
                    std::cerr << ": " << e.message << "\n";
                }
                return 1;
            }
            auto cfg = *outcome.config;
            if (!out_dir_override.empty()) cfg.out_dir = out_dir_override;
            if (!method_override.empty()) {
                if (method_override == "perturbative") cfg.method = pulselab::io::MethodChoice::Perturbative;
                else if (method_override == "exact") cfg.method = pulselab::io::MethodChoice::Exact;
                else if (method_override == "both") cfg.method = pulselab::io::MethodChoice::Both;
                else {
                    std::cerr << "config error: --method must be perturbative, exact or both\n";
                    return 1;
                }
            }
            if (tol_override > 0.0) cfg.tol_rel = tol_override;
            if (threads_override > 0) cfg.threads = threads_override;
            if (svg_on) cfg.svg = true;
            if (svg_off) cfg.svg = false;
            return pulselab::app::run_scenario(cfg);
        }
        if (repro->parsed()) return pulselab::app::run_reproduce(repro_out);
        if (fig1->parsed())
            return pulselab::app::run_fig1(range[0], range[1], samples, fig1_out, !fig1_svg_off);
        if (fit->parsed()) return pulselab::app::run_fit(knots[0], knots[1]);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

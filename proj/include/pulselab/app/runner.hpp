#pragma once

#include <optional>
#include <string>

#include "pulselab/io/config.hpp"

namespace pulselab::app {

/// In-memory scenario outputs; every string is byte-deterministic for a
/// fixed config regardless of worker count.
struct ScenarioOutput {
    std::string spectrum_csv;
    std::string summary_json;
    std::optional<std::string> svg;
    int exit_code = 0;  // 0 ok, 2 when no mode succeeded
};

ScenarioOutput execute_scenario(const io::ScenarioConfig& cfg);

/// Runs a scenario and writes spectrum.csv / summary.json / spectrum.svg
/// under cfg.out_dir.
int run_scenario(const io::ScenarioConfig& cfg);

/// Prints the reference-number report and writes reproduce.csv /
/// reproduce.json under out_dir.  Exit 0 iff every row passes.
int run_reproduce(const std::string& out_dir);

/// Index-model comparison table and plot (fit knots 0.7 / 1.1 um).
int run_fig1(double lo_um, double hi_um, int samples, const std::string& out_dir, bool svg);

/// Two-point massive-model fit; prints the fitted constants.
int run_fit(double knot1_um, double knot2_um);

}  // namespace pulselab::app

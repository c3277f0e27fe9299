#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pulselab::io {

enum class Geometry { Planar, Filament };
enum class ModelKind { Index, Mass };
enum class PolChoice { A, Lambda, Both };
enum class MethodChoice { Perturbative, Exact, Both };

/// Fully validated scenario description.  See docs/scenario_format.md for
/// the config grammar.
struct ScenarioConfig {
    Geometry geometry = Geometry::Planar;
    ModelKind model = ModelKind::Index;
    PolChoice polarization = PolChoice::A;
    MethodChoice method = MethodChoice::Perturbative;

    // dispersion source: explicit constants or a two-point fit
    double n0 = 0.0;
    double m0_sq = 0.0;
    std::optional<std::pair<double, double>> fit_knots;

    // pulse
    double v = 0.0;
    double delta_n0 = 0.0;
    double delta_m0 = 0.0;
    double delta_tau = 0.0;
    double delta_r = 2.0;
    double convert_omega = 2.0 * 3.14159265358979323846;  // delta_n -> delta_m carrier

    // substructure (optional)
    bool substructure = false;
    double omega_in = 0.0;
    double v_ph = 0.0;
    double cone_angle_deg = 0.0;
    bool apply_cone_correction = false;
    double delta_t_lab = 0.0;

    // mode grids
    std::vector<double> kappa_grid;
    std::vector<double> kx_grid;
    std::vector<double> kr_grid;          // filament final modes
    std::vector<double> kr_initial_grid;  // filament total-probability grid

    // output
    std::string out_dir = "out";
    bool svg = true;

    double tol_rel = 1e-10;
    double tol_abs = 1e-14;
    int threads = 1;
};

struct ConfigError {
    int line = 0;  // 0 when the error is semantic rather than syntactic
    std::string message;
};

struct ParseOutcome {
    std::optional<ScenarioConfig> config;  // set only when errors is empty
    std::vector<ConfigError> errors;       // all violations, not just the first
};

ParseOutcome parse_config_text(const std::string& text);
ParseOutcome parse_config(const std::string& path);

}  // namespace pulselab::io

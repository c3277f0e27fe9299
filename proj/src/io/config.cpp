#include "pulselab/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace pulselab::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct RawEntry {
    std::string value;
    int line;
    bool used = false;
};

using RawMap = std::map<std::string, RawEntry>;

bool parse_double(const std::string& s, double& out) {
    const std::string t = trim(s);
    try {
        std::size_t pos = 0;
        out = std::stod(t, &pos);
        return pos == t.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

// grid values: "lin(a, b, n)", or a plain comma list "a, b, c"
bool parse_grid(const std::string& s, std::vector<double>& out, std::string& why) {
    const std::string t = trim(s);
    if (t.rfind("lin(", 0) == 0 && t.back() == ')') {
        std::vector<double> args;
        std::stringstream ss(t.substr(4, t.size() - 5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            double v;
            if (!parse_double(tok, v)) { why = "bad number in lin(...)"; return false; }
            args.push_back(v);
        }
        if (args.size() != 3 || args[2] < 1 || args[2] != std::floor(args[2])) {
            why = "lin(a, b, n) needs two bounds and an integer count";
            return false;
        }
        const int n = static_cast<int>(args[2]);
        out.clear();
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? args[0] : args[0] + (args[1] - args[0]) * i / (n - 1));
        return true;
    }
    out.clear();
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        double v;
        if (!parse_double(tok, v)) { why = "bad number in list"; return false; }
        out.push_back(v);
    }
    if (out.empty()) { why = "empty grid"; return false; }
    return true;
}

class Extractor {
  public:
    Extractor(RawMap& raw, std::vector<ConfigError>& errors) : raw_(raw), errors_(errors) {}

    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    std::optional<std::string> str(const std::string& key) {
        auto it = raw_.find(key);
        if (it == raw_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::optional<double> num(const std::string& key) {
        auto s = str(key);
        if (!s) return std::nullopt;
        double v;
        if (!parse_double(*s, v)) {
            fail(key, "expected a number, got '" + *s + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<bool> flag(const std::string& key) {
        auto s = str(key);
        if (!s) return std::nullopt;
        if (*s == "true" || *s == "on" || *s == "yes") return true;
        if (*s == "false" || *s == "off" || *s == "no") return false;
        fail(key, "expected true/false");
        return std::nullopt;
    }

    std::optional<std::vector<double>> grid(const std::string& key) {
        auto s = str(key);
        if (!s) return std::nullopt;
        std::vector<double> g;
        std::string why;
        if (!parse_grid(*s, g, why)) {
            fail(key, why);
            return std::nullopt;
        }
        return g;
    }

    void fail(const std::string& key, const std::string& msg) {
        const auto it = raw_.find(key);
        errors_.push_back({it == raw_.end() ? 0 : it->second.line, key + ": " + msg});
    }

    void require(const std::string& key, const std::string& what) {
        if (!has(key)) errors_.push_back({0, "missing key '" + key + "' (" + what + ")"});
    }

    void report_unused() {
        for (const auto& [key, entry] : raw_)
            if (!entry.used) errors_.push_back({entry.line, "unknown key '" + key + "'"});
    }

  private:
    RawMap& raw_;
    std::vector<ConfigError>& errors_;
};

}  // namespace

ParseOutcome parse_config_text(const std::string& text) {
    ParseOutcome out;
    RawMap raw;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                out.errors.push_back({lineno, "unterminated section header"});
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            out.errors.push_back({lineno, "expected 'key = value'"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            out.errors.push_back({lineno, "empty key or value"});
            continue;
        }
        const std::string full = section.empty() ? key : section + "." + key;
        if (raw.count(full)) {
            out.errors.push_back({lineno, "duplicate key '" + full + "'"});
            continue;
        }
        raw[full] = {value, lineno};
    }
    if (!out.errors.empty()) return out;

    ScenarioConfig cfg;
    Extractor ex(raw, out.errors);

    // geometry / model / polarization / method
    if (auto g = ex.str("geometry")) {
        if (*g == "planar") cfg.geometry = Geometry::Planar;
        else if (*g == "filament") cfg.geometry = Geometry::Filament;
        else ex.fail("geometry", "must be planar or filament");
    } else {
        ex.require("geometry", "planar or filament");
    }
    if (auto m = ex.str("model")) {
        if (*m == "index") cfg.model = ModelKind::Index;
        else if (*m == "mass") cfg.model = ModelKind::Mass;
        else ex.fail("model", "must be index or mass");
    } else {
        ex.require("model", "index or mass");
    }
    if (auto p = ex.str("polarization")) {
        if (*p == "A") cfg.polarization = PolChoice::A;
        else if (*p == "Lambda") cfg.polarization = PolChoice::Lambda;
        else if (*p == "both") cfg.polarization = PolChoice::Both;
        else ex.fail("polarization", "must be A, Lambda or both");
    }
    if (auto m = ex.str("method")) {
        if (*m == "perturbative") cfg.method = MethodChoice::Perturbative;
        else if (*m == "exact") cfg.method = MethodChoice::Exact;
        else if (*m == "both") cfg.method = MethodChoice::Both;
        else ex.fail("method", "must be perturbative, exact or both");
    }

    // dispersion: either explicit constants or fit knots
    const bool has_knots = ex.has("dispersion.fit_knots");
    if (has_knots) {
        if (auto g = ex.grid("dispersion.fit_knots")) {
            if (g->size() != 2) ex.fail("dispersion.fit_knots", "need exactly two wavelengths");
            else if ((*g)[0] == (*g)[1]) ex.fail("dispersion.fit_knots", "knots must be distinct");
            else cfg.fit_knots = std::make_pair((*g)[0], (*g)[1]);
        }
    } else {
        if (auto v = ex.num("dispersion.n0")) cfg.n0 = *v;
        else ex.require("dispersion.n0", "background index, or give dispersion.fit_knots");
        if (auto v = ex.num("dispersion.m0_sq")) cfg.m0_sq = *v;
        else ex.require("dispersion.m0_sq", "effective mass squared, 1/um^2");
        if (cfg.n0 != 0.0 && !(cfg.n0 > 1.0))
            ex.fail("dispersion.n0", "must be > 1");
        if (cfg.m0_sq != 0.0 && !(cfg.m0_sq > 0.0))
            ex.fail("dispersion.m0_sq", "must be > 0");
    }

    // pulse
    if (ex.has("pulse.v") && ex.has("pulse.v_recip"))
        ex.fail("pulse.v", "give either v or v_recip, not both");
    if (auto v = ex.num("pulse.v")) cfg.v = *v;
    else if (auto vr = ex.num("pulse.v_recip")) {
        if (*vr != 0.0) cfg.v = 1.0 / *vr;
    } else {
        ex.require("pulse.v", "pulse speed in units of c0 (or pulse.v_recip)");
    }
    if (cfg.v != 0.0 && !(cfg.v > 0.0 && cfg.v < 1.0))
        ex.fail("pulse.v", "pulse speed must be subluminal in vacuum (0 < v < 1)");
    if (auto v = ex.num("pulse.delta_n0")) cfg.delta_n0 = *v;
    if (auto v = ex.num("pulse.delta_m0")) cfg.delta_m0 = *v;
    if (auto v = ex.num("pulse.delta_tau")) {
        cfg.delta_tau = *v;
        if (!(*v > 0.0)) ex.fail("pulse.delta_tau", "must be > 0");
    } else {
        ex.require("pulse.delta_tau", "envelope standard deviation, um");
    }
    if (auto v = ex.num("pulse.delta_r")) {
        cfg.delta_r = *v;
        if (!(*v > 0.0)) ex.fail("pulse.delta_r", "must be > 0");
    }
    if (auto v = ex.num("pulse.convert_omega")) {
        cfg.convert_omega = *v;
        if (!(*v > 0.0)) ex.fail("pulse.convert_omega", "must be > 0");
    }

    // substructure
    if (auto b = ex.flag("substructure.enabled")) cfg.substructure = *b;
    if (cfg.substructure) {
        if (auto v = ex.num("substructure.omega_in")) cfg.omega_in = *v;
        else ex.require("substructure.omega_in", "pump frequency, 1/um");
        if (ex.has("substructure.v_ph") && ex.has("substructure.v_ph_recip"))
            ex.fail("substructure.v_ph", "give either v_ph or v_ph_recip, not both");
        if (auto v = ex.num("substructure.v_ph")) cfg.v_ph = *v;
        else if (auto vr = ex.num("substructure.v_ph_recip")) {
            if (*vr != 0.0) cfg.v_ph = 1.0 / *vr;
        } else {
            ex.require("substructure.v_ph", "carrier phase velocity (or v_ph_recip)");
        }
        if (cfg.v_ph != 0.0 && !(cfg.v_ph > 0.0 && cfg.v_ph < 1.0))
            ex.fail("substructure.v_ph", "must lie in (0, 1)");
        if (auto v = ex.num("substructure.cone_angle_deg")) {
            cfg.cone_angle_deg = *v;
            if (!(*v >= 0.0 && *v < 90.0))
                ex.fail("substructure.cone_angle_deg", "must lie in [0, 90)");
        }
        if (auto b = ex.flag("substructure.apply_cone_correction"))
            cfg.apply_cone_correction = *b;
        if (auto v = ex.num("substructure.delta_t_lab")) {
            cfg.delta_t_lab = *v;
            if (!(*v > 0.0)) ex.fail("substructure.delta_t_lab", "must be > 0");
        } else {
            ex.require("substructure.delta_t_lab", "lab-frame envelope width, um");
        }
    } else {
        // consume optional keys so they are not reported as unknown
        ex.str("substructure.omega_in");
        ex.str("substructure.v_ph");
        ex.str("substructure.v_ph_recip");
        ex.str("substructure.cone_angle_deg");
        ex.str("substructure.apply_cone_correction");
        ex.str("substructure.delta_t_lab");
    }

    // grids
    if (cfg.geometry == Geometry::Planar) {
        if (auto g = ex.grid("grid.kappa")) cfg.kappa_grid = *g;
        else ex.require("grid.kappa", "planar longitudinal wavenumbers");
        if (auto g = ex.grid("grid.k_x")) cfg.kx_grid = *g;
        else ex.require("grid.k_x", "planar transverse wavenumbers");
        ex.str("grid.k_r");
        ex.str("grid.kr_initial");
    } else {
        if (auto g = ex.grid("grid.k_r")) cfg.kr_grid = *g;
        else ex.require("grid.k_r", "filament final-mode radial wavenumbers");
        if (auto g = ex.grid("grid.kr_initial")) cfg.kr_initial_grid = *g;
        else ex.require("grid.kr_initial", "filament initial-mode grid");
        if (auto g = ex.grid("grid.kappa")) cfg.kappa_grid = *g;
        else ex.require("grid.kappa", "filament longitudinal wavenumbers");
        ex.str("grid.k_x");
        for (double kr : cfg.kr_grid)
            if (!(kr > 0.0)) {
                ex.fail("grid.k_r", "radial wavenumbers must be > 0");
                break;
            }
        for (double kr : cfg.kr_initial_grid)
            if (!(kr > 0.0)) {
                ex.fail("grid.kr_initial", "radial wavenumbers must be > 0");
                break;
            }
    }

    // model-amplitude consistency
    if (cfg.model == ModelKind::Index && cfg.delta_n0 == 0.0 && !ex.has("pulse.delta_n0"))
        ex.require("pulse.delta_n0", "index model needs the peak index perturbation");
    if (cfg.model == ModelKind::Mass && cfg.delta_m0 == 0.0 && cfg.delta_n0 == 0.0 &&
        !ex.has("pulse.delta_m0") && !ex.has("pulse.delta_n0"))
        ex.require("pulse.delta_m0", "mass model needs delta_m0 (or delta_n0 to convert)");

    // regularity precondition (engine would reject it later; catch it here)
    if (cfg.n0 > 1.0 && cfg.v > 0.0 && cfg.v < 1.0) {
        const double worst_n = cfg.model == ModelKind::Index
                                   ? std::min(cfg.n0, cfg.n0 + cfg.delta_n0)
                                   : cfg.n0;
        if (!(worst_n * worst_n * cfg.v * cfg.v > 1.0))
            out.errors.push_back(
                {0, "pulse.v: metric regularity requires n^2 v^2 > 1 along the whole profile"});
    }

    // output / tolerance / threads
    if (auto s = ex.str("output.out_dir")) cfg.out_dir = *s;
    if (auto b = ex.flag("output.svg")) cfg.svg = *b;
    if (auto v = ex.num("tolerance.rel")) {
        cfg.tol_rel = *v;
        if (!(*v > 0.0)) ex.fail("tolerance.rel", "must be > 0");
    }
    if (auto v = ex.num("tolerance.abs")) {
        cfg.tol_abs = *v;
        if (!(*v > 0.0)) ex.fail("tolerance.abs", "must be > 0");
    }
    if (auto v = ex.num("threads")) {
        cfg.threads = static_cast<int>(*v);
        if (cfg.threads < 1) ex.fail("threads", "must be >= 1");
    }

    ex.report_unused();

    if (out.errors.empty()) out.config = cfg;
    return out;
}

ParseOutcome parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ParseOutcome out;
        out.errors.push_back({0, "cannot open config file: " + path});
        return out;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace pulselab::io

#pragma once

#include <string>
#include <vector>

namespace pulselab::io {

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    double log_floor = 1e-60;  // clamp for log-scale plotting of exact zeros
    int width = 880;
    int height = 560;
};

/// Standalone SVG line plot; deterministic bytes for fixed input.
/// Throws on an empty table.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotSpec& spec);

void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const PlotSpec& spec);

}  // namespace pulselab::io

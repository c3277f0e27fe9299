#include "pulselab/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pulselab::io {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// round a range outward to pleasant tick bounds
void nice_ticks(double lo, double hi, std::vector<double>& ticks) {
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double span = hi - lo;
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 0.5 * step; t += step) ticks.push_back(t);
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotSpec& spec) {
    if (series.empty()) throw std::invalid_argument("render_svg: empty table");
    bool any = false;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw std::invalid_argument("render_svg: x/y size mismatch");
        if (!s.x.empty()) any = true;
    }
    if (!any) throw std::invalid_argument("render_svg: empty table");

    auto ymap = [&](double y) { return spec.log_y ? std::log10(std::max(y, spec.log_floor)) : y; };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ymap(s.y[i]));
            ymax = std::max(ymax, ymap(s.y[i]));
        }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double ml = 80, mr = 180, mt = 44, mb = 56;
    const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return mt + ph - (ymap(y) - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
        << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
        << " text-anchor=\"middle\">" << spec.title << "</text>\n";

    // axes box
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks
    std::vector<double> xticks, yticks;
    nice_ticks(xmin, xmax, xticks);
    nice_ticks(ymin, ymax, yticks);
    for (double t : xticks) {
        const double px = X(t);
        svg << "<line x1=\"" << num(px) << "\" y1=\"" << num(mt + ph) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(mt + ph + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << num(px) << "\" y=\"" << num(mt + ph + 20)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(t)
            << "</text>\n";
    }
    for (double t : yticks) {
        const double py = mt + ph - (t - ymin) / (ymax - ymin) * ph;
        svg << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(ml)
            << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        const std::string label = spec.log_y ? ("1e" + num(t)) : num(t);
        svg << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(py + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << label
            << "</text>\n";
    }
    svg << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(spec.height - 12.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << spec.x_label
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << num(mt + ph / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 18 " << num(mt + ph / 2) << ")\">" << spec.y_label
        << "</text>\n";

    // curves + legend
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.x.empty()) continue;
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << ' ';
            svg << num(X(s.x[i])) << ',' << num(Y(s.y[i]));
        }
        svg << "\"/>\n";
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
        svg << "<line x1=\"" << num(ml + pw + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << num(ml + pw + 34) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "")
            << "/>\n";
        svg << "<text x=\"" << num(ml + pw + 40) << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const std::vector<PlotSeries>& series,
               const PlotSpec& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg: cannot open " + path);
    out << render_svg(series, spec);
}

}  // namespace pulselab::io

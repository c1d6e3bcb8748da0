#pragma once

// Self-contained SVG line plots: the gamma_3 curve and sweep ratios.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace divvar {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Renders axes, ticks with labels, one polyline per series and a
/// <metadata id="samples"> block listing every point as "label x y".
std::string render_svg(const PlotSpec& spec);

/// 9! gamma_3(c) at c = 3i/600, i = 0..600.
std::vector<std::pair<double, double>> gamma3_samples();

/// Parses the <metadata id="samples"> block back into (x, y) pairs.
std::vector<std::pair<double, double>> read_svg_samples(const std::string& svg);

/// Throws std::runtime_error when the file cannot be written.
void emit_gamma3_plot(const std::filesystem::path& out);
/// log10 ratio against log10 d, one series per (k, c). An empty CSV gives
/// empty axes.
void emit_ratio_plot(const std::filesystem::path& csv, const std::filesystem::path& out);

}  // namespace divvar

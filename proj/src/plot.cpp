#include "divvar/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "divvar/constants.hpp"
#include "divvar/experiments.hpp"

namespace divvar {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

// Roughly five ticks at 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= 6.0) break;
    }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(v);
    return t;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : spec.series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<metadata id=\"samples\">\n";
    for (const auto& s : spec.series) {
        for (auto [x, y] : s.points) o << escape(s.label) << ' ' << num(x) << ' ' << num(y) << '\n';
    }
    o << "</metadata>\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">" << escape(spec.title)
      << "</text>\n";

    o << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
      << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph << "\"/>\n";
    for (double t : nice_ticks(xmin, xmax)) {
        o << "<line x1=\"" << sx(t) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(t) << "\" y2=\"" << kTop + ph + 5
          << "\"/>\n";
    }
    for (double t : nice_ticks(ymin, ymax)) {
        o << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << kLeft << "\" y2=\"" << sy(t) << "\"/>\n";
    }
    o << "</g>\n<g fill=\"black\">\n";
    for (double t : nice_ticks(xmin, xmax)) {
        o << "<text x=\"" << sx(t) << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">" << tick_label(t)
          << "</text>\n";
    }
    for (double t : nice_ticks(ymin, ymax)) {
        o << "<text x=\"" << kLeft - 8 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">" << tick_label(t)
          << "</text>\n";
    }
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kTop + ph / 2 << ")\">" << escape(spec.y_label) << "</text>\n</g>\n";

    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const auto& s = spec.series[i];
        const char* color = kColors[i % std::size(kColors)];
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) {
            if (std::isfinite(x) && std::isfinite(y)) o << sx(x) << ',' << sy(y) << ' ';
        }
        o << "\"/>\n";
        if (spec.series.size() > 1) {
            o << "<text x=\"" << kLeft + pw - 10 << "\" y=\"" << kTop + 15 + 15 * static_cast<double>(i)
              << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(s.label) << "</text>\n";
        }
    }
    o << "</svg>\n";
    return o.str();
}

std::vector<std::pair<double, double>> gamma3_samples() {
    const auto& table = gamma_piecewise_table(3);
    const BigRational nine_fact(factorial(9));
    std::vector<std::pair<double, double>> pts;
    pts.reserve(601);
    for (int i = 0; i <= 600; ++i) {
        const BigRational c(3 * i, 600);
        pts.emplace_back(static_cast<double>(c), static_cast<double>(nine_fact * table.eval(c)));
    }
    return pts;
}

std::vector<std::pair<double, double>> read_svg_samples(const std::string& svg) {
    const auto open = svg.find("<metadata id=\"samples\">");
    const auto close = svg.find("</metadata>");
    if (open == std::string::npos || close == std::string::npos) throw std::invalid_argument("svg: no sample block");
    std::istringstream in(svg.substr(open, close - open));
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<double, double>> pts;
    while (std::getline(in, line)) {
        const auto b = line.rfind(' ');
        const auto a = line.rfind(' ', b - 1);
        if (a == std::string::npos || b == std::string::npos) continue;
        pts.emplace_back(std::stod(line.substr(a + 1, b - a - 1)), std::stod(line.substr(b + 1)));
    }
    return pts;
}

namespace {

void write_file(const std::filesystem::path& out, const std::string& text) {
    if (out.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(out.parent_path(), ec);
    }
    std::ofstream f(out, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + out.string());
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + out.string());
}

}  // namespace

void emit_gamma3_plot(const std::filesystem::path& out) {
    PlotSpec spec{"9! gamma_3(c)", "c", "9! gamma_3(c)", {{"9! gamma_3", gamma3_samples()}}};
    write_file(out, render_svg(spec));
}

void emit_ratio_plot(const std::filesystem::path& csv, const std::filesystem::path& out) {
    std::map<std::pair<int, double>, PlotSeries> groups;
    for (const auto& row : read_csv(csv)) {
        auto& s = groups[{row.k, row.c}];
        if (s.label.empty()) s.label = "k=" + std::to_string(row.k) + " c=" + tick_label(row.c);
        if (row.ratio > 0) s.points.emplace_back(std::log10(static_cast<double>(row.d)), std::log10(row.ratio));
    }
    PlotSpec spec{"variance / main term", "log10 d", "log10 ratio", {}};
    for (auto& [key, s] : groups) {
        std::sort(s.points.begin(), s.points.end());
        spec.series.push_back(std::move(s));
    }
    write_file(out, render_svg(spec));
}

}  // namespace divvar

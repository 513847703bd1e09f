#pragma once

#include "esplab/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

namespace esplab {

/// One plotted series: a polyline by default, scattered dots on request.
struct plot_series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool scatter = false;
};

struct plot_options {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false; // non-positive values are clamped to a tenth of the
                        // smallest positive value (or 1e-16 if none)
};

namespace detail {

inline const char* plot_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

// Tick labels want 4 significant digits, not shortest-round-trip output.
inline std::string tick_label(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
    if (ec != std::errc{}) return "?";
    return std::string(buf, p);
}

inline std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

} // namespace detail

/// Renders a static line/scatter plot. Pure string output, no display
/// dependency; byte-deterministic for identical inputs.
inline std::string render_svg_plot(const std::vector<plot_series>& series,
                                   const plot_options& opt) {
    constexpr double width = 860.0, height = 560.0;
    constexpr double ml = 80.0, mr = 30.0, mt = 48.0, mb = 64.0;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool have = false;
    double min_pos_y = 0.0;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (y > 0.0 && (min_pos_y == 0.0 || y < min_pos_y)) min_pos_y = y;
            if (!have) {
                xmin = xmax = x;
                ymin = ymax = y;
                have = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    const double y_floor = opt.log_y ? (min_pos_y > 0.0 ? min_pos_y / 10.0 : 1e-16) : 0.0;
    auto ty = [&](double y) { return opt.log_y ? std::log10(std::max(y, y_floor)) : y; };
    ymin = ty(ymin);
    ymax = ty(ymax);
    if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-300) ymax = ymin + 1.0;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (1.0 - (ty(y) - ymin) / (ymax - ymin)) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_number(width) +
           "\" height=\"" + format_number(height) + "\" viewBox=\"0 0 " +
           format_number(width) + " " + format_number(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + format_number(width / 2) +
           "\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"17\">" +
           detail::svg_escape(opt.title) + "</text>\n";

    // axes box
    svg += "<rect x=\"" + format_number(ml) + "\" y=\"" + format_number(mt) + "\" width=\"" +
           format_number(pw) + "\" height=\"" + format_number(ph) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    constexpr int n_ticks = 5;
    for (int t = 0; t <= n_ticks; ++t) {
        const double fx = xmin + (xmax - xmin) * t / n_ticks;
        const double gx = px(fx);
        svg += "<line x1=\"" + format_number(gx) + "\" y1=\"" + format_number(mt + ph) +
               "\" x2=\"" + format_number(gx) + "\" y2=\"" + format_number(mt + ph + 6) +
               "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + format_number(gx) + "\" y=\"" + format_number(mt + ph + 22) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::tick_label(fx) + "</text>\n";

        const double fy = ymin + (ymax - ymin) * t / n_ticks;
        const double gy = mt + (1.0 - static_cast<double>(t) / n_ticks) * ph;
        const double label = opt.log_y ? std::pow(10.0, fy) : fy;
        svg += "<line x1=\"" + format_number(ml - 6) + "\" y1=\"" + format_number(gy) +
               "\" x2=\"" + format_number(ml) + "\" y2=\"" + format_number(gy) +
               "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + format_number(ml - 10) + "\" y=\"" + format_number(gy + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::tick_label(label) + "</text>\n";
    }

    svg += "<text x=\"" + format_number(ml + pw / 2) + "\" y=\"" +
           format_number(height - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           detail::svg_escape(opt.x_label) + "</text>\n";
    svg += "<text x=\"20\" y=\"" + format_number(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 20 " +
           format_number(mt + ph / 2) + ")\">" + detail::svg_escape(opt.y_label) +
           "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* col = detail::plot_color(si);
        if (s.scatter) {
            for (auto [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                svg += "<circle cx=\"" + format_number(px(x)) + "\" cy=\"" +
                       format_number(py(y)) + "\" r=\"1.6\" fill=\"" + col +
                       "\" fill-opacity=\"0.6\"/>\n";
            }
        } else {
            std::string pts;
            for (auto [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                if (!pts.empty()) pts.push_back(' ');
                pts += format_number(px(x)) + "," + format_number(py(y));
            }
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(col) +
                   "\" stroke-width=\"1.4\" points=\"" + pts + "\"/>\n";
        }
        // legend entry
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
        svg += "<rect x=\"" + format_number(ml + pw - 168) + "\" y=\"" +
               format_number(ly - 9) + "\" width=\"12\" height=\"12\" fill=\"" + col +
               "\"/>\n";
        svg += "<text x=\"" + format_number(ml + pw - 150) + "\" y=\"" + format_number(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" +
               detail::svg_escape(s.name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace esplab

// plot.hpp
// Deterministic plot emission for concentration series: self-contained SVG
// or a wide CSV table. Byte-identical output for identical input.

#pragma once

#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chiroptica/polarimetry.hpp"

namespace chiroptica {

enum class PlotFormat { Svg, Csv };

struct PlotOptions {
    int width = 880;
    int height = 560;
    std::string title;   // empty: use the series kind label
    std::string x_label = "concentration (%)";
    std::string y_label; // empty: use the series kind label
};

inline std::string_view series_kind_label(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::AbsorbedPower: return "absorbed power (mW)";
        case SeriesKind::GammaLeft: return "gamma_left (rad)";
        case SeriesKind::GammaRight: return "gamma_right (rad)";
        case SeriesKind::Rotation: return "rotation (deg)";
        case SeriesKind::SpecificRotation: return "specific rotation (deg dm^-1 (g/mL)^-1)";
    }
    return "";
}

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline void check_series(std::span<const PlotSeries> series) {
    if (series.empty()) throw std::invalid_argument("plot needs at least one series");
    for (const PlotSeries& s : series) {
        if (s.x.empty()) throw std::invalid_argument("series '" + s.label + "' is empty");
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("series '" + s.label + "' has mismatched x/y sizes");
    }
}

inline constexpr std::array<std::string_view, 8> plot_palette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

} // namespace detail

// Wide table: first column is the union of all x values (ascending), then one
// column per series, blank where a series has no point at that x.
inline std::string emit_plot_csv(std::span<const PlotSeries> series) {
    detail::check_series(series);

    std::vector<double> xs;
    for (const PlotSeries& s : series) xs.insert(xs.end(), s.x.begin(), s.x.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::string out = "concentration";
    for (const PlotSeries& s : series) {
        out += ',';
        out += detail::csv_safe(s.label);
    }
    out += '\n';

    for (const double x : xs) {
        out += detail::fmt_full(x);
        for (const PlotSeries& s : series) {
            out += ',';
            const auto it = std::lower_bound(s.x.begin(), s.x.end(), x);
            if (it != s.x.end() && *it == x)
                out += detail::fmt_full(s.y[static_cast<std::size_t>(it - s.x.begin())]);
        }
        out += '\n';
    }
    return out;
}

// Self-contained SVG: fixed layout, fixed palette, two-decimal coordinates.
inline std::string emit_plot_svg(std::span<const PlotSeries> series, const PlotOptions& options) {
    detail::check_series(series);
    if (options.width < 320 || options.height < 240)
        throw std::invalid_argument("plot canvas must be at least 320x240");

    double x_lo = series[0].x.front(), x_hi = x_lo;
    double y_lo = series[0].y.front(), y_hi = y_lo;
    for (const PlotSeries& s : series) {
        for (const double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (const double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    const auto widen = [](double& lo, double& hi) {
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
    };
    widen(x_lo, x_hi);
    widen(y_lo, y_hi);

    const double left = 64.0, right = 170.0, top = 44.0, bottom = 56.0;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;
    const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

    const std::string title =
        detail::xml_escape(options.title.empty() ? std::string(series_kind_label(series[0].kind))
                                                 : options.title);
    const std::string y_label =
        detail::xml_escape(options.y_label.empty() ? std::string(series_kind_label(series[0].kind))
                                                   : options.y_label);
    const std::string x_label = detail::xml_escape(options.x_label);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    svg += "<rect width=\"" + std::to_string(options.width) + "\" height=\"" +
           std::to_string(options.height) + "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + detail::fmt_coord(left + plot_w / 2.0) +
           "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
           title + "</text>\n";

    // grid and ticks, five divisions per axis
    for (int i = 0; i <= 4; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / 4.0;
        const double gx = px(fx);
        svg += "<line x1=\"" + detail::fmt_coord(gx) + "\" y1=\"" + detail::fmt_coord(top) +
               "\" x2=\"" + detail::fmt_coord(gx) + "\" y2=\"" + detail::fmt_coord(top + plot_h) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::fmt_coord(gx) + "\" y=\"" +
               detail::fmt_coord(top + plot_h + 18.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               detail::fmt_tick(fx) + "</text>\n";
        const double fy = y_lo + (y_hi - y_lo) * i / 4.0;
        const double gy = py(fy);
        svg += "<line x1=\"" + detail::fmt_coord(left) + "\" y1=\"" + detail::fmt_coord(gy) +
               "\" x2=\"" + detail::fmt_coord(left + plot_w) + "\" y2=\"" + detail::fmt_coord(gy) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + detail::fmt_coord(left - 6.0) + "\" y=\"" +
               detail::fmt_coord(gy + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               detail::fmt_tick(fy) + "</text>\n";
    }

    svg += "<rect x=\"" + detail::fmt_coord(left) + "\" y=\"" + detail::fmt_coord(top) +
           "\" width=\"" + detail::fmt_coord(plot_w) + "\" height=\"" + detail::fmt_coord(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + detail::fmt_coord(left + plot_w / 2.0) + "\" y=\"" +
           detail::fmt_coord(top + plot_h + 40.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + x_label +
           "</text>\n";
    svg += "<text x=\"18\" y=\"" + detail::fmt_coord(top + plot_h / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           detail::fmt_coord(top + plot_h / 2.0) + ")\">" + y_label + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const std::string_view color = detail::plot_palette[si % detail::plot_palette.size()];
        if (s.x.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (i > 0) svg += ' ';
                svg += detail::fmt_coord(px(s.x[i])) + "," + detail::fmt_coord(py(s.y[i]));
            }
            svg += "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg += "<circle cx=\"" + detail::fmt_coord(px(s.x[i])) + "\" cy=\"" +
                   detail::fmt_coord(py(s.y[i])) + "\" r=\"3\" fill=\"";
            svg += color;
            svg += "\"/>\n";
        }
        const double ly = top + 10.0 + 18.0 * static_cast<double>(si);
        svg += "<rect x=\"" + detail::fmt_coord(left + plot_w + 14.0) + "\" y=\"" +
               detail::fmt_coord(ly) + "\" width=\"16\" height=\"4\" fill=\"";
        svg += color;
        svg += "\"/>\n";
        svg += "<text x=\"" + detail::fmt_coord(left + plot_w + 36.0) + "\" y=\"" +
               detail::fmt_coord(ly + 6.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + detail::xml_escape(s.label) +
               "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

inline std::string emit_plot(std::span<const PlotSeries> series, PlotFormat format,
                             const PlotOptions& options = {}) {
    return format == PlotFormat::Csv ? emit_plot_csv(series) : emit_plot_svg(series, options);
}

} // namespace chiroptica

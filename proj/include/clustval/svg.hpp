#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "clustval/cvi.hpp"
#include "clustval/harness.hpp"

namespace clustval {
namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c; break;
        }
    }
    return out;
}

inline const char* series_color(std::size_t j) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf", "#393b79", "#ad494a"};
    return palette[j % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string svg_text(double x, double y, const std::string& s,
                            const std::string& anchor = "middle", int size = 11) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
           std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + xml_escape(s) + "</text>\n";
}

inline std::string svg_line(double x1, double y1, double x2, double y2, const std::string& stroke,
                            double width = 1.0, const std::string& extra = "") {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" + extra +
           "/>\n";
}

}  // namespace detail

/// Grouped box-and-whisker figure: one group per stratum, one box per CVI
/// (whiskers min/max, box q1..q3, median line, circle at the mean).
inline std::string boxplot_svg(const std::vector<StratumSummary>& strata,
                               const std::vector<Cvi>& cvis,
                               const std::string& title = "correlation with external validation") {
    using detail::num;
    const double box_w = 14.0, box_gap = 4.0, group_gap = 28.0;
    const double top = 44.0, left = 52.0, plot_h = 300.0;
    const double group_w = static_cast<double>(cvis.size()) * (box_w + box_gap) - box_gap;
    const double plot_w =
        static_cast<double>(strata.size()) * (group_w + group_gap) - group_gap;
    const double legend_w = 140.0;
    const double width = left + plot_w + 24.0 + legend_w;
    const double height = top + plot_h + 56.0;
    auto y_of = [&](double v) { return top + (1.0 - v) / 2.0 * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += detail::svg_text(left + plot_w / 2.0, 20.0, title, "middle", 13);

    for (double tick = -1.0; tick <= 1.01; tick += 0.5) {
        double y = y_of(tick);
        svg += detail::svg_line(left - 4.0, y, left, y, "#333");
        svg += detail::svg_text(left - 8.0, y + 4.0, num(tick), "end", 10);
        if (tick == 0.0) {
            svg += detail::svg_line(left, y, left + plot_w, y, "#bbb", 1.0,
                                    " stroke-dasharray=\"4 3\"");
        }
    }
    svg += detail::svg_line(left, y_of(1.0), left, y_of(-1.0), "#333");

    for (std::size_t s = 0; s < strata.size(); ++s) {
        double gx = left + static_cast<double>(s) * (group_w + group_gap);
        svg += detail::svg_text(gx + group_w / 2.0, top + plot_h + 20.0, strata[s].label);
        for (std::size_t j = 0; j < cvis.size(); ++j) {
            if (!strata[s].spread[j]) continue;
            const FiveNumber& f = *strata[s].spread[j];
            double cx = gx + static_cast<double>(j) * (box_w + box_gap) + box_w / 2.0;
            const std::string color = detail::series_color(j);
            auto clamp1 = [](double v) { return std::min(1.0, std::max(-1.0, v)); };
            double ymin = y_of(clamp1(f.min)), ymax = y_of(clamp1(f.max));
            double yq1 = y_of(clamp1(f.q1)), yq3 = y_of(clamp1(f.q3));
            double ymed = y_of(clamp1(f.median));
            svg += detail::svg_line(cx, ymax, cx, ymin, color);
            svg += detail::svg_line(cx - box_w / 4.0, ymax, cx + box_w / 4.0, ymax, color);
            svg += detail::svg_line(cx - box_w / 4.0, ymin, cx + box_w / 4.0, ymin, color);
            svg += "<rect x=\"" + num(cx - box_w / 2.0) + "\" y=\"" + num(yq3) + "\" width=\"" +
                   num(box_w) + "\" height=\"" + num(std::max(yq1 - yq3, 0.5)) + "\" fill=\"" +
                   color + "\" fill-opacity=\"0.35\" stroke=\"" + color + "\"/>\n";
            svg += detail::svg_line(cx - box_w / 2.0, ymed, cx + box_w / 2.0, ymed, color, 1.5);
            if (strata[s].mean_value[j]) {
                svg += "<circle cx=\"" + num(cx) + "\" cy=\"" +
                       num(y_of(clamp1(*strata[s].mean_value[j]))) + "\" r=\"2.4\" fill=\"white\" "
                       "stroke=\"" + color + "\"/>\n";
            }
        }
    }

    double lx = left + plot_w + 24.0;
    for (std::size_t j = 0; j < cvis.size(); ++j) {
        double ly = top + static_cast<double>(j) * 18.0;
        svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               detail::series_color(j) + "\" fill-opacity=\"0.6\"/>\n";
        svg += detail::svg_text(lx + 18.0, ly + 10.0, to_string(cvis[j]), "start", 11);
    }
    svg += "</svg>\n";
    return svg;
}

/// Mean-rank figure: one row per method, a dot at its mean rank and a bar
/// spanning the critical difference around it; methods within one bar of
/// each other are not significantly different.
inline std::string cd_diagram_svg(const std::vector<Cvi>& cvis,
                                  const std::vector<std::optional<double>>& mean_rank,
                                  std::optional<double> cd, std::optional<double> friedman_p) {
    using detail::num;
    std::vector<std::size_t> ranked;
    for (std::size_t j = 0; j < cvis.size(); ++j) {
        if (mean_rank[j]) ranked.push_back(j);
    }
    std::sort(ranked.begin(), ranked.end(),
              [&](std::size_t a, std::size_t b) { return *mean_rank[a] < *mean_rank[b]; });

    const double left = 130.0, top = 56.0, row_h = 22.0, plot_w = 420.0;
    const double c = static_cast<double>(cvis.size());
    const double width = left + plot_w + 30.0;
    const double height = top + static_cast<double>(ranked.size()) * row_h + 30.0;
    auto x_of = [&](double rank) { return left + (rank - 1.0) / std::max(c - 1.0, 1.0) * plot_w; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
           num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::string title = "mean ranks (lower is better)";
    if (cd) title += ", CD = " + format_score(*cd);
    if (friedman_p) title += ", Friedman p = " + format_score(*friedman_p);
    svg += detail::svg_text(left + plot_w / 2.0, 20.0, title, "middle", 13);

    svg += detail::svg_line(left, top - 16.0, left + plot_w, top - 16.0, "#333");
    for (double r = 1.0; r <= c + 0.01; r += 1.0) {
        svg += detail::svg_line(x_of(r), top - 20.0, x_of(r), top - 12.0, "#333");
        svg += detail::svg_text(x_of(r), top - 24.0, num(r), "middle", 10);
    }

    if (ranked.empty()) {
        svg += detail::svg_text(left + plot_w / 2.0, top + 20.0, "no ranked methods");
        svg += "</svg>\n";
        return svg;
    }

    for (std::size_t t = 0; t < ranked.size(); ++t) {
        std::size_t j = ranked[t];
        double y = top + static_cast<double>(t) * row_h;
        double x = x_of(*mean_rank[j]);
        const std::string color = detail::series_color(j);
        if (cd) {
            double half = *cd / 2.0 / std::max(c - 1.0, 1.0) * plot_w;
            svg += detail::svg_line(x - half, y, x + half, y, color, 3.0,
                                    " stroke-opacity=\"0.45\"");
        }
        svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3.2\" fill=\"" + color +
               "\"/>\n";
        svg += detail::svg_text(left - 10.0, y + 4.0,
                                to_string(cvis[j]) + " (" + format_score(*mean_rank[j]) + ")",
                                "end", 11);
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace clustval

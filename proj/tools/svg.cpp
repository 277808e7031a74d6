#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace rankcp::cli {

namespace {

constexpr std::size_t max_panels = 8;
constexpr double canvas_width = 1000.0;
constexpr double panel_height = 200.0;
constexpr double pad_left = 50.0;
constexpr double pad_right = 15.0;
constexpr double pad_top = 18.0;
constexpr double pad_bottom = 18.0;

void append_num(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    out += buf;
}

} // namespace

std::string render_svg(const Series& series, const std::vector<std::size_t>& change_points) {
    const std::size_t t = series.rows();
    const std::size_t panels = std::min(series.cols(), max_panels);
    const double height = panel_height * static_cast<double>(panels);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    char head[160];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                  "width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  canvas_width, height, canvas_width, height);
    svg += head;

    auto x_at = [&](double index) {
        if (t < 2) return 0.5 * (pad_left + canvas_width - pad_right);
        return pad_left +
               (canvas_width - pad_left - pad_right) * index / static_cast<double>(t - 1);
    };

    for (std::size_t p = 0; p < panels; ++p) {
        const double band_top = panel_height * static_cast<double>(p);
        const double plot_top = band_top + pad_top;
        const double plot_bottom = band_top + panel_height - pad_bottom;

        double lo = t > 0 ? series.at(0, p) : 0.0;
        double hi = lo;
        for (std::size_t r = 1; r < t; ++r) {
            lo = std::min(lo, series.at(r, p));
            hi = std::max(hi, series.at(r, p));
        }
        auto y_at = [&](double v) {
            if (hi == lo) return 0.5 * (plot_top + plot_bottom);
            return plot_bottom - (v - lo) / (hi - lo) * (plot_bottom - plot_top);
        };

        svg += "<g class=\"panel\">\n";
        char rect[160];
        std::snprintf(rect, sizeof rect,
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"none\" stroke=\"#cccccc\"/>\n",
                      pad_left, plot_top, canvas_width - pad_left - pad_right,
                      plot_bottom - plot_top);
        svg += rect;
        char label[96];
        std::snprintf(label, sizeof label,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"#444444\">dim %zu</text>\n",
                      pad_left, band_top + 13.0, p + 1);
        svg += label;
        if (p == 0 && series.cols() > max_panels) {
            char notice[128];
            std::snprintf(notice, sizeof notice,
                          "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" fill=\"#aa0000\">showing "
                          "%zu of %zu dimensions</text>\n",
                          pad_left + 70.0, band_top + 13.0, max_panels, series.cols());
            svg += notice;
        }

        svg += "<polyline fill=\"none\" stroke=\"#3366aa\" stroke-width=\"1\" points=\"";
        for (std::size_t r = 0; r < t; ++r) {
            if (r > 0) svg += ' ';
            append_num(svg, x_at(static_cast<double>(r)));
            svg += ',';
            append_num(svg, y_at(series.at(r, p)));
        }
        svg += "\"/>\n";

        for (const std::size_t cp : change_points) {
            char line[192];
            std::snprintf(line, sizeof line,
                          "<line class=\"changepoint\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                          "y2=\"%.2f\" stroke=\"green\" stroke-width=\"1.5\"/>\n",
                          x_at(static_cast<double>(cp)), band_top,
                          x_at(static_cast<double>(cp)), band_top + panel_height);
            svg += line;
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_svg(const Series& series, const std::vector<std::size_t>& change_points,
              const std::string& path) {
    std::ofstream file(path);
    if (!file) throw InputError("cannot write plot file: " + path);
    file << render_svg(series, change_points);
    if (!file.good()) throw InputError("failed writing " + path);
}

} // namespace rankcp::cli

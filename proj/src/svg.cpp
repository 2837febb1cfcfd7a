#include "spinrelax/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spinrelax {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double nice_step(double span, int target_ticks) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0) nice = 1.0;
    else if (frac <= 2.0) nice = 2.0;
    else if (frac <= 5.0) nice = 5.0;
    return nice * mag;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
            x_min = std::min(x_min, p[0]);
            x_max = std::max(x_max, p[0]);
            y_min = std::min(y_min, p[1]);
            y_max = std::max(y_max, p[1]);
        }
    if (!std::isfinite(x_min)) {
        x_min = 0.0;
        x_max = 1.0;
        y_min = 0.0;
        y_max = 1.0;
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto sx = [&](double x) {
        return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w;
    };
    const auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"sans-serif\">\n";
    svg << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" << title
        << "</text>\n";

    // Axes box
    svg << "<rect x=\"" << fmt_coord(kMarginLeft) << "\" y=\"" << fmt_coord(kMarginTop)
        << "\" width=\"" << fmt_coord(plot_w) << "\" height=\"" << fmt_coord(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double x_step = nice_step(x_max - x_min, 8);
    for (double t = std::ceil(x_min / x_step) * x_step; t <= x_max + 1e-12 * x_step;
         t += x_step) {
        const double px = sx(t);
        svg << "<line x1=\"" << fmt_coord(px) << "\" y1=\"" << fmt_coord(kMarginTop)
            << "\" x2=\"" << fmt_coord(px) << "\" y2=\""
            << fmt_coord(kMarginTop + plot_h) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt_coord(px) << "\" y=\""
            << fmt_coord(kMarginTop + plot_h + 20.0)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt_tick(t)
            << "</text>\n";
    }
    const double y_step = nice_step(y_max - y_min, 8);
    for (double t = std::ceil(y_min / y_step) * y_step; t <= y_max + 1e-12 * y_step;
         t += y_step) {
        const double py = sy(t);
        svg << "<line x1=\"" << fmt_coord(kMarginLeft) << "\" y1=\"" << fmt_coord(py)
            << "\" x2=\"" << fmt_coord(kMarginLeft + plot_w) << "\" y2=\""
            << fmt_coord(py) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << fmt_coord(kMarginLeft - 8.0) << "\" y=\""
            << fmt_coord(py + 4.0) << "\" text-anchor=\"end\" font-size=\"12\">"
            << fmt_tick(t) << "</text>\n";
    }

    svg << "<text x=\"" << fmt_coord(kMarginLeft + plot_w / 2.0) << "\" y=\""
        << fmt_coord(kHeight - 15.0) << "\" text-anchor=\"middle\" font-size=\"14\">"
        << x_label << "</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt_coord(kMarginTop + plot_h / 2.0)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
        << fmt_coord(kMarginTop + plot_h / 2.0) << ")\">" << y_label << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
        std::ostringstream seg;
        bool open = false;
        const auto flush = [&] {
            if (open) {
                svg << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"" << seg.str() << "\"/>\n";
                seg.str("");
                open = false;
            }
        };
        for (const auto& p : series[k].points) {
            if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
                flush();
                continue;
            }
            seg << fmt_coord(sx(p[0])) << ',' << fmt_coord(sy(p[1])) << ' ';
            open = true;
        }
        flush();

        const double lx = kMarginLeft + plot_w - 160.0;
        const double ly = kMarginTop + 18.0 * (static_cast<double>(k) + 1.0);
        svg << "<line x1=\"" << fmt_coord(lx) << "\" y1=\"" << fmt_coord(ly - 4.0)
            << "\" x2=\"" << fmt_coord(lx + 24.0) << "\" y2=\"" << fmt_coord(ly - 4.0)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt_coord(lx + 30.0) << "\" y=\"" << fmt_coord(ly)
            << "\" font-size=\"12\">" << series[k].label << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace spinrelax

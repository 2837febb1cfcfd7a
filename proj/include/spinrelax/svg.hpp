#pragma once

#include <array>
#include <string>
#include <vector>

namespace spinrelax {

// Self-contained line plots: fixed 800x600 viewBox, linear axes with tick
// labels, no external graphics dependencies. NaN points break the polyline,
// which is how absent branches and regime changes render as gaps.
struct PlotSeries {
    std::string label;
    std::vector<std::array<double, 2>> points;
};

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series);

} // namespace spinrelax

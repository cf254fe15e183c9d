#pragma once

#include <string>
#include <vector>

namespace regforge::cli {

struct PlotSeries {
    std::string         label;
    std::vector<double> x;
    std::vector<double> y;
};

struct LinePlot {
    std::string             title;
    std::string             x_label = "t [s]";
    std::string             y_label;
    std::vector<PlotSeries> series;
    /// Optional fixed y range; otherwise taken from the data.
    double y_min = 0.0;
    double y_max = 0.0;
    bool   fixed_y = false;
};

/// Static SVG line chart with axes, ticks and a legend. Out-of-range samples are clipped.
std::string render_svg(const LinePlot& plot);
void        write_svg_file(const std::string& path, const LinePlot& plot);

}  // namespace regforge::cli

#pragma once

#include <string>
#include <vector>

namespace larsim {

struct ChartPoint {
    double x = 0.0;
    double y = 0.0;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<ChartPoint> points;  // drawn in order as one polyline
};

// Self-contained SVG line chart; axis ranges always cover every point.
std::string render_line_chart(const ChartSpec& spec);

// Reads a sweep CSV, takes the aggregate (seed == "AGG") rows and writes, per
// scenario found, pdr_scenario<k>.svg and delay_scenario<k>.svg into out_dir.
// Returns the paths written. Missing columns or an empty CSV raise
// std::runtime_error before any file is created.
std::vector<std::string> plot_csv(const std::string& csv_path, const std::string& out_dir);

}  // namespace larsim

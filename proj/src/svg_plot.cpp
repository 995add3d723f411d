#include "larsim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace larsim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 25.0;
constexpr double kTop = 45.0;
constexpr double kBottom = 55.0;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

// Rounds the tick step to a pleasant 1/2/5 multiple.
double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec) {
    if (spec.points.empty()) {
        throw std::runtime_error("chart '" + spec.title + "': no data points");
    }
    double x_min = spec.points[0].x, x_max = x_min;
    double y_min = spec.points[0].y, y_max = y_min;
    for (const ChartPoint& p : spec.points) {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_min = std::min(y_min, p.y);
        y_max = std::max(y_max, p.y);
    }
    if (x_max <= x_min) {
        x_max = x_min + 1.0;
    }
    // Pad the y range so the polyline does not hug the frame.
    double pad = (y_max - y_min) * 0.08;
    if (pad <= 0.0) {
        pad = std::max(std::abs(y_max) * 0.1, 0.5);
    }
    y_min -= pad;
    y_max += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto map_x = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto map_y = [&](double y) {
        return kTop + (y_max - y) / (y_max - y_min) * plot_h;
    };

    std::ostringstream s;
    s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n";
    s << "<rect width='" << kWidth << "' height='" << kHeight << "' fill='white'/>\n";
    s << "<text x='" << kWidth / 2 << "' y='24' font-size='16' text-anchor='middle'>"
      << spec.title << "</text>\n";

    // Frame.
    s << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << plot_w << "' height='"
      << plot_h << "' fill='none' stroke='black'/>\n";

    // Y grid and labels.
    const double y_step = nice_step(y_max - y_min, 6);
    for (double v = std::ceil(y_min / y_step) * y_step; v <= y_max + 1e-12; v += y_step) {
        const double py = map_y(v);
        s << "<line x1='" << kLeft << "' y1='" << py << "' x2='" << kLeft + plot_w << "' y2='"
          << py << "' stroke='#dddddd'/>\n";
        s << "<text x='" << kLeft - 6 << "' y='" << py + 4
          << "' font-size='11' text-anchor='end'>" << fmt("%g", v) << "</text>\n";
    }
    // X ticks at the data points themselves (node counts).
    for (const ChartPoint& p : spec.points) {
        const double px = map_x(p.x);
        s << "<line x1='" << px << "' y1='" << kTop + plot_h << "' x2='" << px << "' y2='"
          << kTop + plot_h + 5 << "' stroke='black'/>\n";
        s << "<text x='" << px << "' y='" << kTop + plot_h + 18
          << "' font-size='11' text-anchor='middle'>" << fmt("%g", p.x) << "</text>\n";
    }

    s << "<text x='" << kLeft + plot_w / 2 << "' y='" << kHeight - 12
      << "' font-size='12' text-anchor='middle'>" << spec.x_label << "</text>\n";
    s << "<text x='16' y='" << kTop + plot_h / 2
      << "' font-size='12' text-anchor='middle' transform='rotate(-90 16 " << kTop + plot_h / 2
      << ")'>" << spec.y_label << "</text>\n";

    s << "<polyline fill='none' stroke='#1f6fb2' stroke-width='2' points='";
    for (const ChartPoint& p : spec.points) {
        s << fmt("%.2f", map_x(p.x)) << "," << fmt("%.2f", map_y(p.y)) << " ";
    }
    s << "'/>\n";
    for (const ChartPoint& p : spec.points) {
        s << "<circle cx='" << fmt("%.2f", map_x(p.x)) << "' cy='" << fmt("%.2f", map_y(p.y))
          << "' r='3.5' fill='#1f6fb2'/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

struct AggRow {
    int scenario;
    int nodes;
    double pdr;
    double delay;
};

}  // namespace

std::vector<std::string> plot_csv(const std::string& csv_path, const std::string& out_dir) {
    std::ifstream in(csv_path);
    if (!in) {
        throw std::runtime_error("cannot open CSV: " + csv_path);
    }
    std::string header;
    if (!std::getline(in, header)) {
        throw std::runtime_error("CSV is empty: " + csv_path);
    }
    const std::vector<std::string> columns = split(header, ',');
    const auto column = [&](const std::string& name) {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) {
            throw std::runtime_error("CSV is missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - columns.begin());
    };
    const std::size_t c_scenario = column("scenario");
    const std::size_t c_nodes = column("nodes");
    const std::size_t c_seed = column("seed");
    const std::size_t c_pdr = column("pdr");
    const std::size_t c_delay = column("avg_delay_s");

    std::map<int, std::vector<AggRow>> per_scenario;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() < columns.size()) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns.size()) + " fields");
        }
        if (fields[c_seed] != "AGG") {
            continue;
        }
        AggRow row;
        row.scenario = std::stoi(fields[c_scenario]);
        row.nodes = std::stoi(fields[c_nodes]);
        row.pdr = std::stod(fields[c_pdr]);
        row.delay = std::stod(fields[c_delay]);
        per_scenario[row.scenario].push_back(row);
    }
    if (per_scenario.empty()) {
        throw std::runtime_error("CSV has no aggregate rows: " + csv_path);
    }

    std::vector<std::string> written;
    for (auto& [scenario, rows] : per_scenario) {
        std::sort(rows.begin(), rows.end(),
                  [](const AggRow& a, const AggRow& b) { return a.nodes < b.nodes; });
        const std::string tag =
            scenario == 0 ? std::string("custom") : std::to_string(scenario);

        ChartSpec pdr_spec;
        pdr_spec.title = "Packet delivery ratio, scenario " + tag;
        pdr_spec.x_label = "number of nodes";
        pdr_spec.y_label = "packet delivery ratio";
        ChartSpec delay_spec;
        delay_spec.title = "Average end-to-end delay, scenario " + tag;
        delay_spec.x_label = "number of nodes";
        delay_spec.y_label = "average delay (s)";
        for (const AggRow& row : rows) {
            pdr_spec.points.push_back({static_cast<double>(row.nodes), row.pdr});
            delay_spec.points.push_back({static_cast<double>(row.nodes), row.delay});
        }

        for (const auto& [name, spec] :
             {std::pair{std::string("pdr_scenario") + tag + ".svg", pdr_spec},
              std::pair{std::string("delay_scenario") + tag + ".svg", delay_spec}}) {
            const std::string path = out_dir + "/" + name;
            std::ofstream out(path);
            if (!out) {
                throw std::runtime_error("cannot write " + path);
            }
            out << render_line_chart(spec);
            if (!out.flush()) {
                throw std::runtime_error("failed writing " + path);
            }
            written.push_back(path);
        }
    }
    return written;
}

}  // namespace larsim

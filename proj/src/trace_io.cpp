#include "larsim/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace larsim {

void export_trace(const MobilityTrace& trace, std::ostream& out) {
    char line[128];
    for (NodeId node = 0; node < static_cast<NodeId>(trace.node_count()); ++node) {
        for (int tick = 0; tick < trace.tick_count(); ++tick) {
            const Position p = trace.sample(node, tick);
            const double t = tick * trace.interval();
            std::snprintf(line, sizeof(line), "%u %.6f %.6f %.6f\n", node, t, p.x, p.y);
            out << line;
        }
    }
}

std::string export_trace(const MobilityTrace& trace) {
    std::ostringstream out;
    export_trace(trace, out);
    return out.str();
}

namespace {

struct RawSample {
    double time;
    double x;
    double y;
};

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

MobilityTrace import_trace(std::istream& in) {
    std::map<NodeId, std::vector<RawSample>> samples;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        unsigned node = 0;
        double t = 0.0, x = 0.0, y = 0.0;
        char trailing = 0;
        const int got = std::sscanf(line.c_str(), "%u %lf %lf %lf %c", &node, &t, &x, &y,
                                    &trailing);
        if (got != 4) {
            fail(line_no, "expected '<node> <time> <x> <y>', got '" + line + "'");
        }
        if (t < 0.0) {
            fail(line_no, "negative sample time");
        }
        samples[node].push_back({t, x, y});
    }
    if (samples.empty()) {
        throw std::runtime_error("trace: no samples");
    }

    const NodeId node_count = samples.rbegin()->first + 1;
    if (samples.size() != node_count) {
        throw std::runtime_error("trace: node ids are not contiguous from 0");
    }

    const std::vector<RawSample>& first = samples.begin()->second;
    const int ticks = static_cast<int>(first.size());
    if (ticks < 2) {
        throw std::runtime_error("trace: need at least two samples per node");
    }
    const double interval = first[1].time - first[0].time;
    if (interval <= 0.0) {
        throw std::runtime_error("trace: sample times must increase");
    }

    MobilityTrace trace(static_cast<int>(node_count), ticks, interval);
    for (const auto& [node, list] : samples) {
        if (static_cast<int>(list.size()) != ticks) {
            throw std::runtime_error("trace: node " + std::to_string(node) + " has " +
                                     std::to_string(list.size()) + " samples, expected " +
                                     std::to_string(ticks));
        }
        for (int tick = 0; tick < ticks; ++tick) {
            const RawSample& s = list[tick];
            if (std::abs(s.time - tick * interval) > 1e-6) {
                throw std::runtime_error("trace: node " + std::to_string(node) +
                                         " sample times are not on a uniform grid");
            }
            trace.set_sample(node, tick, {s.x, s.y});
        }
    }
    return trace;
}

MobilityTrace import_trace_text(const std::string& text) {
    std::istringstream in(text);
    return import_trace(in);
}

void write_trace_file(const MobilityTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open trace file for writing: " + path);
    }
    export_trace(trace, out);
    if (!out.flush()) {
        throw std::runtime_error("failed writing trace file: " + path);
    }
}

MobilityTrace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open trace file: " + path);
    }
    return import_trace(in);
}

}  // namespace larsim

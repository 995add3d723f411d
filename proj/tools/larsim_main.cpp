// larsim command line front end: single runs, full sweeps, chart generation
// and mobility trace handling.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "larsim/config.hpp"
#include "larsim/simulation.hpp"
#include "larsim/svg_plot.hpp"
#include "larsim/sweep.hpp"
#include "larsim/trace_io.hpp"

namespace {

using namespace larsim;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

// Builds the base configuration from either --config or --scenario, then
// applies the --nodes / --seeds restrictions.
ScenarioConfig build_config(const std::string& config_path, const std::string& scenario,
                            const std::string& nodes, const std::string& seeds) {
    ScenarioConfig config;
    if (!config_path.empty()) {
        config = load_config_file(config_path);
    } else if (scenario == "custom") {
        config = scenario_preset(0);
    } else if (!scenario.empty()) {
        config = scenario_preset(std::stoi(scenario));
    } else {
        throw std::runtime_error("one of --config or --scenario is required");
    }
    if (!nodes.empty()) {
        config.node_counts.clear();
        for (const std::string& item : split_list(nodes)) {
            config.node_counts.push_back(std::stoi(item));
        }
    }
    if (!seeds.empty()) {
        config.seeds.clear();
        for (const std::string& item : split_list(seeds)) {
            config.seeds.push_back(std::stoull(item));
        }
    }
    validate_config(config);
    return config;
}

void print_report(const RunReport& r) {
    std::printf("scenario %d, %d nodes, seed %llu\n", r.scenario, r.node_count,
                static_cast<unsigned long long>(r.seed));
    std::printf("  pdr          %.6f%s\n", r.pdr, r.no_traffic ? "  (no traffic)" : "");
    std::printf("  avg delay    %.6f s%s\n", r.avg_delay,
                r.no_delivery && !r.no_traffic ? "  (nothing delivered)" : "");
    std::printf("  sent         %llu\n", static_cast<unsigned long long>(r.sent));
    std::printf("  received     %llu\n", static_cast<unsigned long long>(r.received));
    std::printf("  collisions   %llu\n", static_cast<unsigned long long>(r.collisions));
    std::printf("  discoveries  %llu\n", static_cast<unsigned long long>(r.discoveries));
    std::printf("  drops        queue %llu, no-route %llu, link %llu, in-flight %llu\n",
                static_cast<unsigned long long>(r.dropped_queue),
                static_cast<unsigned long long>(r.dropped_no_route),
                static_cast<unsigned long long>(r.dropped_link),
                static_cast<unsigned long long>(r.in_flight));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
    if (!out.flush()) {
        throw std::runtime_error("failed writing " + path);
    }
}

int cmd_run(const std::string& config_path, const std::string& scenario,
            const std::string& nodes, const std::string& seeds, const std::string& out_dir,
            const std::string& trace_in, const std::string& trace_out,
            const std::string& event_log_path) {
    ScenarioConfig config = build_config(config_path, scenario, nodes, seeds);
    if (config.node_counts.size() != 1 || config.seeds.size() != 1) {
        throw std::runtime_error("run wants exactly one node count and one seed "
                                 "(use --nodes N --seeds S or narrow the config)");
    }
    const RunConfig run_config =
        make_run_config(config, config.node_counts[0], config.seeds[0]);

    std::optional<MobilityTrace> trace;
    if (!trace_in.empty()) {
        trace = read_trace_file(trace_in);
    }
    EventLog log;
    EventLog* log_ptr = event_log_path.empty() ? nullptr : &log;

    Simulation sim(run_config, trace ? &*trace : nullptr, log_ptr);
    if (!trace_out.empty()) {
        write_trace_file(sim.trace(), trace_out);
    }
    const RunReport report = sim.run();
    print_report(report);

    if (!event_log_path.empty()) {
        write_text_file(event_log_path, log.text());
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        SweepResult result;
        result.runs = {report};
        result.aggregates = {aggregate(result.runs)};
        std::ostringstream csv;
        write_csv(csv, result);
        write_text_file(out_dir + "/results.csv", csv.str());
        std::printf("wrote %s/results.csv\n", out_dir.c_str());
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& scenario,
              const std::string& nodes, const std::string& seeds, const std::string& out_dir,
              int jobs) {
    std::vector<std::string> scenario_items;
    if (scenario == "all") {
        scenario_items = {"1", "2", "3"};
    } else if (!scenario.empty()) {
        scenario_items = split_list(scenario);
    } else {
        scenario_items = {""};  // config file decides
    }

    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    write_csv_header(csv);
    std::ostringstream summary;

    for (const std::string& item : scenario_items) {
        const ScenarioConfig config = build_config(config_path, item, nodes, seeds);
        const SweepResult result = run_sweep(config, jobs, [](const RunReport& r) {
            std::fprintf(stderr, "  done: scenario %d nodes %d seed %llu pdr %.4f\n",
                         r.scenario, r.node_count, static_cast<unsigned long long>(r.seed),
                         r.pdr);
        });
        write_csv_rows(csv, result);
        append_summary_text(summary, result);
    }

    write_text_file(out_dir + "/results.csv", csv.str());
    std::cout << summary.str();
    std::printf("wrote %s/results.csv\n", out_dir.c_str());
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::vector<std::string> written = plot_csv(csv_path, out_dir);
    for (const std::string& path : written) {
        std::printf("wrote %s\n", path.c_str());
    }
    return 0;
}

int cmd_gen_trace(const std::string& config_path, const std::string& scenario,
                  const std::string& nodes, const std::string& seeds, double duration,
                  const std::string& trace_out) {
    ScenarioConfig config = build_config(config_path, scenario, nodes, seeds);
    if (config.node_counts.size() != 1 || config.seeds.size() != 1) {
        throw std::runtime_error("gen-trace wants exactly one node count and one seed");
    }
    if (duration <= 0.0) {
        duration = config.simulation_time;
    }
    const MobilityTrace trace = generate_trace(config.node_counts[0], duration, config.mobility,
                                               config.grid, config.seeds[0]);
    write_trace_file(trace, trace_out);
    std::printf("wrote %s (%d nodes, %d samples each)\n", trace_out.c_str(),
                trace.node_count(), trace.tick_count());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LAR scheme 1 simulator on Manhattan-grid vehicular mobility"};
    app.require_subcommand(1);

    std::string config_path, scenario, nodes, seeds, out_dir;
    std::string trace_in, trace_out, event_log_path, csv_path;
    double duration = 0.0;
    int jobs = 1;

    CLI::App* run = app.add_subcommand("run", "Execute a single simulation run");
    run->add_option("--config", config_path, "Config file (key=value lines)");
    run->add_option("--scenario", scenario, "Scenario preset: 1, 2, 3 or custom");
    run->add_option("--nodes", nodes, "Node count");
    run->add_option("--seeds", seeds, "Seed");
    run->add_option("--out-dir", out_dir, "Directory for results.csv");
    run->add_option("--trace-in", trace_in, "Replay mobility from this trace file");
    run->add_option("--trace-out", trace_out, "Export the mobility trace used");
    run->add_option("--event-log", event_log_path, "Write the routing event log here");

    CLI::App* sweep = app.add_subcommand("sweep", "Run the node-count x seed matrix");
    sweep->add_option("--config", config_path, "Config file (key=value lines)");
    sweep->add_option("--scenario", scenario,
                      "Preset list: e.g. 1 or 1,2,3 or all or custom");
    sweep->add_option("--nodes", nodes, "Node count list, e.g. 25,50,75");
    sweep->add_option("--seeds", seeds, "Seed list, e.g. 1,2,3");
    sweep->add_option("--out-dir", out_dir, "Output directory")->required();
    sweep->add_option("--jobs", jobs, "Worker threads across runs");

    CLI::App* plot = app.add_subcommand("plot", "Render SVG charts from a sweep CSV");
    plot->add_option("--csv", csv_path, "results.csv from sweep")->required();
    plot->add_option("--out-dir", out_dir, "Output directory")->required();

    CLI::App* gen = app.add_subcommand("gen-trace", "Generate a mobility trace file");
    gen->add_option("--config", config_path, "Config file (key=value lines)");
    gen->add_option("--scenario", scenario, "Scenario preset: 1, 2, 3 or custom");
    gen->add_option("--nodes", nodes, "Node count");
    gen->add_option("--seeds", seeds, "Seed");
    gen->add_option("--duration", duration, "Trace length in seconds");
    gen->add_option("--trace-out", trace_out, "Output trace path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, scenario, nodes, seeds, out_dir, trace_in, trace_out,
                           event_log_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, scenario, nodes, seeds, out_dir, jobs);
        }
        if (plot->parsed()) {
            return cmd_plot(csv_path, out_dir);
        }
        if (gen->parsed()) {
            return cmd_gen_trace(config_path, scenario, nodes, seeds, duration, trace_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

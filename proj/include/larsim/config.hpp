#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "larsim/simulation.hpp"

namespace larsim {

// Whole-experiment configuration: the per-run parameters plus the node-count
// and seed sweep lists. Presets 1-3 expand to the three published city
// scenarios; `custom` starts from scenario 1 values and overrides freely.
struct ScenarioConfig {
    int scenario = 1;  // 1, 2, 3 or 0 = custom
    GridSpec grid;
    MobilityParams mobility;
    RadioParams radio;
    ProtocolParams protocol;
    std::vector<int> node_counts = {25, 50, 75, 100, 125, 150};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double simulation_time = 1000.0;
    int n_flows = 10;
    double flow_interval = 0.25;
    std::size_t packet_size = 512;
    double warmup = 10.0;
    bool contention = true;
};

// The three scenario presets: common values from the published simulation
// setup (1000x1000 m, 10x15 blocks, 250 m range, 512 B packets, 1000 s,
// node counts 25..150, 10 seeds) plus the per-scenario
// (speed_change_probability, min_speed, turn_probability) rows
// (0.25, 10, 0.25), (0.5, 20, 0.5), (0.75, 30, 0.75).
ScenarioConfig scenario_preset(int id);

// Parses `key=value` lines ('#' comments allowed). Unknown keys, unparsable
// values and invariant violations raise std::runtime_error naming the line
// and key. A `scenario=` key expands its preset first; remaining lines
// override it in order.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Range/invariant checks shared by parse_config and the CLI overrides.
void validate_config(const ScenarioConfig& config);

RunConfig make_run_config(const ScenarioConfig& config, int node_count, std::uint64_t seed);

}  // namespace larsim

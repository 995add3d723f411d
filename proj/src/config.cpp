#include "larsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace larsim {

ScenarioConfig scenario_preset(int id) {
    ScenarioConfig config;  // defaults already carry the common table values
    config.scenario = id;
    switch (id) {
        case 0:  // custom starts from the scenario 1 row
        case 1:
            config.mobility.speed_change_prob = 0.25;
            config.mobility.min_speed = 10.0;
            config.mobility.turn_prob = 0.25;
            break;
        case 2:
            config.mobility.speed_change_prob = 0.5;
            config.mobility.min_speed = 20.0;
            config.mobility.turn_prob = 0.5;
            break;
        case 3:
            config.mobility.speed_change_prob = 0.75;
            config.mobility.min_speed = 30.0;
            config.mobility.turn_prob = 0.75;
            break;
        default:
            throw std::runtime_error("unknown scenario preset " + std::to_string(id));
    }
    return config;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& key, const std::string& what) {
    throw std::runtime_error("config line " + std::to_string(line_no) + ", key '" + key +
                             "': " + what);
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

double parse_double(int line_no, const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            fail(line_no, key, "trailing characters in number '" + value + "'");
        }
        return v;
    } catch (const std::invalid_argument&) {
        fail(line_no, key, "not a number: '" + value + "'");
    } catch (const std::out_of_range&) {
        fail(line_no, key, "number out of range: '" + value + "'");
    }
}

long long parse_int(int line_no, const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) {
            fail(line_no, key, "trailing characters in integer '" + value + "'");
        }
        return v;
    } catch (const std::invalid_argument&) {
        fail(line_no, key, "not an integer: '" + value + "'");
    } catch (const std::out_of_range&) {
        fail(line_no, key, "integer out of range: '" + value + "'");
    }
}

bool parse_bool(int line_no, const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    fail(line_no, key, "expected on/off, got '" + value + "'");
}

template <typename T>
std::vector<T> parse_list(int line_no, const std::string& key, const std::string& value,
                          const std::function<T(const std::string&)>& one) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            fail(line_no, key, "empty list element");
        }
        out.push_back(one(item));
    }
    if (out.empty()) {
        fail(line_no, key, "empty list");
    }
    return out;
}

void apply_key(ScenarioConfig& c, int line_no, const std::string& key,
               const std::string& value) {
    if (key == "scenario") {
        return;  // consumed by the preset pass
    }
    if (key == "area_width") {
        c.grid.area_width = parse_double(line_no, key, value);
    } else if (key == "area_height") {
        c.grid.area_height = parse_double(line_no, key, value);
    } else if (key == "blocks_x") {
        c.grid.blocks_x = static_cast<int>(parse_int(line_no, key, value));
    } else if (key == "blocks_y") {
        c.grid.blocks_y = static_cast<int>(parse_int(line_no, key, value));
    } else if (key == "mean_speed") {
        c.mobility.mean_speed = parse_double(line_no, key, value);
    } else if (key == "min_speed") {
        c.mobility.min_speed = parse_double(line_no, key, value);
    } else if (key == "speed_change_probability") {
        c.mobility.speed_change_prob = parse_double(line_no, key, value);
    } else if (key == "turn_probability") {
        c.mobility.turn_prob = parse_double(line_no, key, value);
    } else if (key == "update_interval") {
        c.mobility.update_interval = parse_double(line_no, key, value);
    } else if (key == "range") {
        c.radio.range = parse_double(line_no, key, value);
    } else if (key == "bitrate") {
        c.radio.bitrate = parse_double(line_no, key, value);
    } else if (key == "propagation_delay") {
        c.radio.propagation_delay = parse_double(line_no, key, value);
    } else if (key == "max_unicast_retries") {
        c.radio.max_unicast_retries = static_cast<int>(parse_int(line_no, key, value));
    } else if (key == "backoff_window") {
        c.radio.backoff_window = parse_double(line_no, key, value);
    } else if (key == "t_disc") {
        c.protocol.t_disc = parse_double(line_no, key, value);
    } else if (key == "max_discovery_attempts") {
        c.protocol.max_discovery_attempts = static_cast<int>(parse_int(line_no, key, value));
    } else if (key == "queue_limit") {
        c.protocol.pending_queue_limit =
            static_cast<std::size_t>(parse_int(line_no, key, value));
    } else if (key == "rreq_jitter") {
        c.protocol.rreq_jitter = parse_double(line_no, key, value);
    } else if (key == "control_packet_size") {
        c.protocol.control_packet_size =
            static_cast<std::size_t>(parse_int(line_no, key, value));
    } else if (key == "fallback") {
        c.protocol.fallback_enabled = parse_bool(line_no, key, value);
    } else if (key == "seed_locations") {
        c.protocol.seed_location_tables = parse_bool(line_no, key, value);
    } else if (key == "contention") {
        c.contention = parse_bool(line_no, key, value);
    } else if (key == "nodes") {
        c.node_counts = parse_list<int>(line_no, key, value, [&](const std::string& s) {
            return static_cast<int>(parse_int(line_no, key, s));
        });
    } else if (key == "seeds") {
        c.seeds =
            parse_list<std::uint64_t>(line_no, key, value, [&](const std::string& s) {
                const long long v = parse_int(line_no, key, s);
                if (v < 0) {
                    fail(line_no, key, "seeds must be non-negative");
                }
                return static_cast<std::uint64_t>(v);
            });
    } else if (key == "simulation_time") {
        c.simulation_time = parse_double(line_no, key, value);
    } else if (key == "n_flows") {
        c.n_flows = static_cast<int>(parse_int(line_no, key, value));
    } else if (key == "flow_interval") {
        c.flow_interval = parse_double(line_no, key, value);
    } else if (key == "packet_size") {
        c.packet_size = static_cast<std::size_t>(parse_int(line_no, key, value));
    } else if (key == "warmup") {
        c.warmup = parse_double(line_no, key, value);
    } else {
        fail(line_no, key, "unknown key");
    }
}

struct KeyValue {
    int line_no;
    std::string key;
    std::string value;
};

std::vector<KeyValue> tokenize(const std::string& text) {
    std::vector<KeyValue> out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key=value, got '" + line + "'");
        }
        out.push_back({line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return out;
}

void check(bool ok, const std::string& what) {
    if (!ok) {
        throw std::runtime_error("config: " + what);
    }
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
    check(c.grid.area_width > 0 && c.grid.area_height > 0, "area dimensions must be positive");
    check(c.grid.blocks_x >= 1 && c.grid.blocks_y >= 1, "need at least one block per axis");
    check(c.mobility.mean_speed >= 0, "mean_speed must be >= 0");
    check(c.mobility.min_speed >= 0, "min_speed must be >= 0");
    check(c.mobility.speed_change_prob >= 0 && c.mobility.speed_change_prob <= 1,
          "speed_change_probability must lie in [0,1]");
    check(c.mobility.turn_prob >= 0 && c.mobility.turn_prob <= 1,
          "turn_probability must lie in [0,1]");
    check(c.mobility.update_interval > 0, "update_interval must be positive");
    check(c.radio.range > 0, "range must be positive");
    check(c.radio.bitrate > 0, "bitrate must be positive");
    check(c.radio.propagation_delay >= 0, "propagation_delay must be >= 0");
    check(c.radio.max_unicast_retries >= 0, "max_unicast_retries must be >= 0");
    check(c.radio.backoff_window >= 0, "backoff_window must be >= 0");
    check(c.protocol.t_disc > 0, "t_disc must be positive");
    check(c.protocol.max_discovery_attempts >= 1, "max_discovery_attempts must be >= 1");
    check(c.protocol.pending_queue_limit >= 1, "queue_limit must be >= 1");
    check(c.protocol.rreq_jitter >= 0, "rreq_jitter must be >= 0");
    check(c.protocol.control_packet_size >= 1, "control_packet_size must be >= 1");
    check(!c.node_counts.empty(), "nodes list is empty");
    for (const int n : c.node_counts) {
        check(n >= 1, "node counts must be >= 1");
    }
    check(!c.seeds.empty(), "seeds list is empty");
    check(c.simulation_time > 0, "simulation_time must be positive");
    check(c.n_flows >= 0, "n_flows must be >= 0");
    check(c.flow_interval > 0, "flow_interval must be positive");
    check(c.packet_size >= 1, "packet_size must be >= 1");
    check(c.warmup >= 0, "warmup must be >= 0");
    if (c.n_flows > 0) {
        check(c.simulation_time > 2 * c.warmup,
              "simulation_time must exceed twice the warmup to fit the send window");
    }
}

ScenarioConfig parse_config(const std::string& text) {
    const std::vector<KeyValue> entries = tokenize(text);

    // Preset expansion happens before any override, wherever the scenario
    // key sits in the file.
    ScenarioConfig config = scenario_preset(1);
    config.scenario = 0;
    for (const KeyValue& kv : entries) {
        if (kv.key == "scenario") {
            if (kv.value == "custom") {
                config = scenario_preset(0);
            } else {
                const long long id = parse_int(kv.line_no, kv.key, kv.value);
                if (id < 1 || id > 3) {
                    fail(kv.line_no, kv.key, "expected 1, 2, 3 or custom");
                }
                config = scenario_preset(static_cast<int>(id));
            }
        }
    }

    for (const KeyValue& kv : entries) {
        apply_key(config, kv.line_no, kv.key, kv.value);
    }
    validate_config(config);
    return config;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

RunConfig make_run_config(const ScenarioConfig& config, int node_count, std::uint64_t seed) {
    RunConfig run;
    run.scenario_id = config.scenario;
    run.grid = config.grid;
    run.mobility = config.mobility;
    run.radio = config.radio;
    run.protocol = config.protocol;
    run.protocol.area_width = config.grid.area_width;
    run.protocol.area_height = config.grid.area_height;
    run.node_count = node_count;
    run.simulation_time = config.simulation_time;
    run.n_flows = config.n_flows;
    run.flow_interval = config.flow_interval;
    run.packet_size = config.packet_size;
    run.warmup = config.warmup;
    run.contention = config.contention;
    run.seed = seed;
    return run;
}

}  // namespace larsim

#include "larsim/traffic.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace larsim {

int flow_packet_count(const CbrFlow& flow) {
    return static_cast<int>(std::floor((flow.end - flow.start) / flow.interval)) + 1;
}

std::vector<CbrFlow> make_flows(int n_flows, int node_count, double sim_time, double warmup,
                                double interval, std::size_t packet_size, Rng& rng) {
    if (node_count < 2) {
        throw std::invalid_argument("make_flows: need at least two nodes");
    }
    if (n_flows < 0) {
        throw std::invalid_argument("make_flows: negative flow count");
    }
    const std::uint64_t pair_space =
        static_cast<std::uint64_t>(node_count) * (node_count - 1);
    if (static_cast<std::uint64_t>(n_flows) > pair_space) {
        throw std::invalid_argument("make_flows: more flows than distinct ordered pairs");
    }
    const double start = warmup;
    const double end = sim_time - warmup;
    if (n_flows > 0 && start >= end) {
        throw std::invalid_argument("make_flows: warm-up margins leave no send window");
    }
    if (interval <= 0.0) {
        throw std::invalid_argument("make_flows: interval must be positive");
    }

    std::vector<CbrFlow> flows;
    flows.reserve(n_flows);
    std::set<std::pair<NodeId, NodeId>> used;
    for (int k = 0; k < n_flows; ++k) {
        NodeId src = 0;
        NodeId dst = 0;
        do {
            src = static_cast<NodeId>(rng.uniform_index(node_count));
            dst = static_cast<NodeId>(rng.uniform_index(node_count));
        } while (src == dst || used.count({src, dst}) > 0);
        used.insert({src, dst});
        flows.push_back({static_cast<std::uint32_t>(k), src, dst, packet_size, interval, start,
                         end});
    }
    return flows;
}

}  // namespace larsim

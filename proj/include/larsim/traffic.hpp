#pragma once

#include <cstdint>
#include <vector>

#include "larsim/geometry.hpp"
#include "larsim/random.hpp"

namespace larsim {

// One constant-bit-rate connection: fixed-size packets every `interval`
// seconds from `start` through `end`.
struct CbrFlow {
    std::uint32_t flow_id = 0;
    NodeId source = 0;
    NodeId destination = 0;
    std::size_t packet_size = 512;  // bytes
    double interval = 0.25;         // seconds
    double start = 0.0;
    double end = 0.0;
};

// Number of packets a flow emits: floor((end - start) / interval) + 1.
int flow_packet_count(const CbrFlow& flow);

// Send time of the k-th packet (0-based).
inline double flow_send_time(const CbrFlow& flow, int k) {
    return flow.start + k * flow.interval;
}

// Draws n_flows distinct ordered (source, destination) pairs uniformly
// without replacement. Throws when the pair space is too small or the
// warm-up margins do not fit into sim_time.
std::vector<CbrFlow> make_flows(int n_flows, int node_count, double sim_time, double warmup,
                                double interval, std::size_t packet_size, Rng& rng);

}  // namespace larsim

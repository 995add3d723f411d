#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "larsim/geometry.hpp"

namespace larsim {

// Wireless channel abstraction: a fixed-radius disk stands in for the two-ray
// ground model at a given transmit power, and frame overlap at a shared
// receiver stands in for 802.11 contention loss.
struct RadioParams {
    double range = 250.0;               // meters, boundary inclusive
    double bitrate = 2e6;               // bits/second
    double propagation_delay = 3.336e-9;  // seconds per meter
    int max_unicast_retries = 3;        // extra attempts after a collision
    double backoff_window = 5e-3;       // retry delay drawn uniform in [0, window]
};

// Air time of a frame.
inline double tx_duration(std::size_t bytes, const RadioParams& params) {
    return static_cast<double>(bytes) * 8.0 / params.bitrate;
}

struct Transmission {
    NodeId sender = 0;
    double start = 0.0;  // seconds
    double end = 0.0;    // seconds, start + air time
    std::optional<NodeId> unicast_target;
};

// All nodes within range of `node`, excluding the node itself. Positions are
// indexed by node id.
std::vector<NodeId> neighbors(NodeId node, std::span<const Position> positions,
                              const RadioParams& params);

// Frames collide when their air-time intervals overlap; touching endpoints do
// not count, so back-to-back frames are safe.
inline bool intervals_overlap(const Transmission& a, const Transmission& b) {
    return a.start < b.end && b.start < a.end;
}

// True when `other` destroys `tx` at a receiver: the intervals overlap and
// the other sender is close enough for its signal to reach the receiver.
// The rule is symmetric, so overlapping frames kill each other at every
// receiver that hears both.
bool collides_at(const Transmission& tx, const Transmission& other, const Position& receiver,
                 const Position& other_sender, const RadioParams& params);

// True when any transmission in `all` other than `tx` itself collides with tx
// at the receiver. `tx_index` identifies tx inside `all`.
bool frame_lost_at(std::size_t tx_index, const Position& receiver,
                   std::span<const Transmission> all, std::span<const Position> positions,
                   const RadioParams& params);

struct Reception {
    NodeId receiver = 0;
    double time = 0.0;  // tx end + distance * propagation delay
};

// Receptions produced by broadcast transmission all[tx_index] over a static
// placement: one per in-range neighbor that no overlapping frame reached.
std::vector<Reception> broadcast_receptions(std::size_t tx_index,
                                            std::span<const Transmission> all,
                                            std::span<const Position> positions,
                                            const RadioParams& params);

enum class UnicastOutcome {
    delivered,
    out_of_range,  // link failure, no point retrying
    collided,      // retry after backoff may succeed
};

// Single unicast attempt for all[tx_index] (must carry a unicast_target).
// Returns the outcome and, when delivered, the reception time.
std::pair<UnicastOutcome, double> unicast_attempt(std::size_t tx_index,
                                                  std::span<const Transmission> all,
                                                  std::span<const Position> positions,
                                                  const RadioParams& params);

}  // namespace larsim

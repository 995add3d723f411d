#include "larsim/radio.hpp"

#include <cassert>

namespace larsim {

std::vector<NodeId> neighbors(NodeId node, std::span<const Position> positions,
                              const RadioParams& params) {
    assert(node < positions.size());
    std::vector<NodeId> out;
    for (NodeId other = 0; other < positions.size(); ++other) {
        if (other == node) {
            continue;
        }
        if (distance(positions[node], positions[other]) <= params.range) {
            out.push_back(other);
        }
    }
    return out;
}

bool collides_at(const Transmission& tx, const Transmission& other, const Position& receiver,
                 const Position& other_sender, const RadioParams& params) {
    (void)tx;
    return intervals_overlap(tx, other) && distance(other_sender, receiver) <= params.range;
}

bool frame_lost_at(std::size_t tx_index, const Position& receiver,
                   std::span<const Transmission> all, std::span<const Position> positions,
                   const RadioParams& params) {
    const Transmission& tx = all[tx_index];
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i == tx_index) {
            continue;
        }
        if (collides_at(tx, all[i], receiver, positions[all[i].sender], params)) {
            return true;
        }
    }
    return false;
}

std::vector<Reception> broadcast_receptions(std::size_t tx_index,
                                            std::span<const Transmission> all,
                                            std::span<const Position> positions,
                                            const RadioParams& params) {
    const Transmission& tx = all[tx_index];
    std::vector<Reception> out;
    for (NodeId rx : neighbors(tx.sender, positions, params)) {
        if (!frame_lost_at(tx_index, positions[rx], all, positions, params)) {
            const double dist = distance(positions[tx.sender], positions[rx]);
            out.push_back({rx, tx.end + dist * params.propagation_delay});
        }
    }
    return out;
}

std::pair<UnicastOutcome, double> unicast_attempt(std::size_t tx_index,
                                                  std::span<const Transmission> all,
                                                  std::span<const Position> positions,
                                                  const RadioParams& params) {
    const Transmission& tx = all[tx_index];
    assert(tx.unicast_target.has_value());
    const NodeId target = *tx.unicast_target;
    const double dist = distance(positions[tx.sender], positions[target]);
    if (dist > params.range) {
        return {UnicastOutcome::out_of_range, 0.0};
    }
    if (frame_lost_at(tx_index, positions[target], all, positions, params)) {
        return {UnicastOutcome::collided, 0.0};
    }
    return {UnicastOutcome::delivered, tx.end + dist * params.propagation_delay};
}

}  // namespace larsim

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "larsim/geometry.hpp"

namespace larsim {

// Zone-restricted flood packet. `path` lists the nodes the request traversed,
// origin first; forwarders append themselves before rebroadcasting.
struct RouteRequest {
    NodeId origin = 0;
    NodeId destination = 0;
    std::uint32_t request_id = 0;  // per-origin monotone counter
    RequestZone zone;
    std::vector<NodeId> path;
};

// Reverse-path reply carrying the discovered source route (origin first) and
// a fresh location snapshot of the destination.
struct RouteReply {
    NodeId origin = 0;
    NodeId destination = 0;
    std::uint32_t request_id = 0;
    std::vector<NodeId> route;
    LocationRecord destination_location;
};

// Route breakage notice traveling back along the broken route toward the
// origin. `reporter_index` is the position in `route` of the node that saw
// the dead link.
struct RouteError {
    std::vector<NodeId> route;
    std::uint32_t reporter_index = 0;
    NodeId dead_next_hop = 0;
};

// Source-routed application payload. `hop_index` points at the node currently
// holding the packet.
struct DataPacket {
    std::uint64_t uid = 0;  // dense per-run packet index, keys the metrics
    NodeId source = 0;
    NodeId destination = 0;
    std::uint32_t flow_id = 0;
    std::uint32_t seq = 0;
    double app_send_time = 0.0;
    std::size_t size_bytes = 512;
    std::vector<NodeId> route;
    std::uint32_t hop_index = 0;
};

using PacketBody = std::variant<RouteRequest, RouteReply, RouteError, DataPacket>;

struct Packet {
    PacketBody body;
    std::size_t size_bytes = 0;  // drives the air time
};

inline bool is_data(const Packet& p) { return std::holds_alternative<DataPacket>(p.body); }

}  // namespace larsim

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_set>
#include <vector>

#include "larsim/eventlog.hpp"
#include "larsim/geometry.hpp"
#include "larsim/metrics.hpp"
#include "larsim/packet.hpp"
#include "larsim/random.hpp"

namespace larsim {

// Protocol knobs. t_disc and the two-attempt fallback follow the classic
// location-aided routing recovery: the second attempt floods the whole area.
struct ProtocolParams {
    double t_disc = 1.0;                // seconds to wait for a route reply
    int max_discovery_attempts = 2;
    std::size_t pending_queue_limit = 64;  // packets awaiting a route, drop-oldest
    double rreq_jitter = 0.01;          // rebroadcast delay drawn uniform in [0, jitter]
    std::size_t control_packet_size = 64;  // bytes for RREQ/RREP/RERR frames
    bool fallback_enabled = true;       // whole-area retry after a failed attempt
    bool seed_location_tables = true;   // preload every node's t=0 position
    double area_width = 1000.0;
    double area_height = 1000.0;
};

// Engine services a node sees. The simulation core implements this; tests can
// stub it to drive a node directly.
class RouterEnv {
  public:
    virtual ~RouterEnv() = default;

    virtual double now() const = 0;
    virtual Position node_position(NodeId node) const = 0;
    // Average speed over the node's current mobility sample interval;
    // advertised in route replies.
    virtual double node_speed(NodeId node) const = 0;

    virtual void send_broadcast(NodeId from, Packet packet) = 0;
    virtual void send_unicast(NodeId from, NodeId to, Packet packet) = 0;

    // Timers; fire back into LarNode::forward_timer_fired / discovery_timer_fired.
    virtual void schedule_forward(NodeId node, RouteRequest rreq, double delay) = 0;
    virtual void schedule_discovery_timer(NodeId node, NodeId destination,
                                          std::uint32_t attempt, double delay) = 0;

    virtual void packet_delivered(std::uint64_t uid, double time) = 0;
    virtual void packet_dropped(std::uint64_t uid, PacketFate fate) = 0;

    virtual MetricsAccumulator& metrics() = 0;
    virtual EventLog* event_log() = 0;
    virtual Rng& mac_rng(NodeId node) = 0;
};

// Pending discovery for one destination.
struct DiscoveryState {
    std::uint32_t attempt = 0;        // 1-based
    double deadline = 0.0;
    std::deque<DataPacket> pending;   // FIFO awaiting a route
};

struct CachedRoute {
    std::vector<NodeId> route;  // origin first, destination last
    double established_at = 0.0;
};

// LAR scheme 1 state machine for a single node: zone-restricted route
// discovery, reverse-path replies, source-routed data, timeout fallback and
// location bookkeeping.
class LarNode {
  public:
    LarNode(NodeId id, const ProtocolParams& params, RouterEnv& env);

    NodeId id() const { return id_; }

    // Seeds the location table entry for `node` (typically everyone's t=0
    // position with the scenario mean speed).
    void seed_location(const LocationRecord& record);

    // Application offers a payload packet. Sends over a cached route or
    // queues it and starts a discovery.
    void app_send(const DataPacket& packet);

    // A frame addressed to (or overheard by) this node arrived.
    void receive(const Packet& packet, NodeId from);

    // Jittered rebroadcast decision point. The zone test runs again here with
    // the node's position at this instant.
    void forward_timer_fired(const RouteRequest& rreq);

    // Discovery timer for (destination, attempt). Stale timers are ignored.
    void discovery_timer_fired(NodeId destination, std::uint32_t attempt);

    // Unicast gave up (retries exhausted or the target is out of range).
    void unicast_failed(const Packet& packet, NodeId target);

    const std::map<NodeId, CachedRoute>& route_cache() const { return route_cache_; }
    const std::map<NodeId, DiscoveryState>& discoveries() const { return discoveries_; }
    bool knows_location(NodeId node) const;
    const LocationRecord& location_of(NodeId node) const;

  private:
    void initiate_discovery(NodeId destination, std::uint32_t attempt);
    void handle_rreq(const RouteRequest& rreq);
    void handle_rrep(const RouteReply& rrep);
    void handle_rerr(const RouteError& rerr);
    void handle_data(const DataPacket& data);
    void send_on_route(DataPacket packet, const std::vector<NodeId>& route);
    void merge_location(const LocationRecord& record);
    void log(LogKind kind, std::uint64_t a, std::uint64_t b = 0, double x = 0.0,
             double y = 0.0);
    Packet control_packet(PacketBody body) const;

    NodeId id_;
    const ProtocolParams& params_;
    RouterEnv& env_;

    std::vector<LocationRecord> locations_;  // indexed by node id
    std::vector<bool> has_location_;
    std::map<NodeId, CachedRoute> route_cache_;
    std::map<NodeId, DiscoveryState> discoveries_;
    std::unordered_set<std::uint64_t> seen_requests_;  // (origin, request_id)
    std::uint32_t next_request_id_ = 0;
};

// True when the node list has no repeated entries.
bool loop_free(const std::vector<NodeId>& path);

}  // namespace larsim

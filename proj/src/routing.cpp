#include "larsim/routing.hpp"

#include <algorithm>
#include <cassert>

namespace larsim {

bool loop_free(const std::vector<NodeId>& path) {
    std::vector<NodeId> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

LarNode::LarNode(NodeId id, const ProtocolParams& params, RouterEnv& env)
    : id_(id), params_(params), env_(env) {}

void LarNode::seed_location(const LocationRecord& record) {
    if (record.node_id >= locations_.size()) {
        locations_.resize(record.node_id + 1);
        has_location_.resize(record.node_id + 1, false);
    }
    locations_[record.node_id] = record;
    has_location_[record.node_id] = true;
}

bool LarNode::knows_location(NodeId node) const {
    return node < has_location_.size() && has_location_[node];
}

const LocationRecord& LarNode::location_of(NodeId node) const {
    assert(knows_location(node));
    return locations_[node];
}

void LarNode::log(LogKind kind, std::uint64_t a, std::uint64_t b, double x, double y) {
    if (EventLog* out = env_.event_log()) {
        out->append({env_.now(), id_, kind, a, b, x, y});
    }
}

Packet LarNode::control_packet(PacketBody body) const {
    return {std::move(body), params_.control_packet_size};
}

void LarNode::app_send(const DataPacket& packet) {
    assert(packet.source == id_);
    const auto cached = route_cache_.find(packet.destination);
    if (cached != route_cache_.end()) {
        log(LogKind::data_send, packet.uid);
        send_on_route(packet, cached->second.route);
        return;
    }
    DiscoveryState& disc = discoveries_[packet.destination];
    disc.pending.push_back(packet);
    log(LogKind::data_enqueued, packet.uid);
    if (disc.pending.size() > params_.pending_queue_limit) {
        const DataPacket oldest = disc.pending.front();
        disc.pending.pop_front();
        log(LogKind::drop_queue_overflow, oldest.uid);
        env_.packet_dropped(oldest.uid, PacketFate::dropped_queue);
    }
    if (disc.attempt == 0) {
        initiate_discovery(packet.destination, 1);
    }
}

void LarNode::initiate_discovery(NodeId destination, std::uint32_t attempt) {
    DiscoveryState& disc = discoveries_[destination];
    disc.attempt = attempt;
    disc.deadline = env_.now() + params_.t_disc;

    RouteRequest rreq;
    rreq.origin = id_;
    rreq.destination = destination;
    rreq.request_id = next_request_id_++;
    rreq.path = {id_};

    // First attempt restricts the flood to the request zone when the
    // destination's location is known; without knowledge (and on the
    // fallback attempt) the protocol degenerates to whole-area flooding.
    bool whole_area = true;
    if (attempt == 1 && knows_location(destination)) {
        rreq.zone = request_zone(env_.node_position(id_),
                                 expected_zone(locations_[destination], env_.now()));
        whole_area = false;
    } else {
        rreq.zone = whole_area_zone(params_.area_width, params_.area_height);
    }

    const std::uint64_t key = rreq_key(rreq.origin, rreq.request_id);
    seen_requests_.insert(key);
    if (EventLog* out = env_.event_log()) {
        out->append_zone({key, rreq.zone, whole_area});
    }
    log(LogKind::discovery_start, destination, attempt);
    log(LogKind::rreq_send, key, attempt);
    env_.metrics().discoveries += 1;
    env_.send_broadcast(id_, control_packet(rreq));
    env_.schedule_discovery_timer(id_, destination, attempt, params_.t_disc);
}

void LarNode::receive(const Packet& packet, NodeId from) {
    (void)from;
    std::visit(
        [this](const auto& body) {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, RouteRequest>) {
                handle_rreq(body);
            } else if constexpr (std::is_same_v<T, RouteReply>) {
                handle_rrep(body);
            } else if constexpr (std::is_same_v<T, RouteError>) {
                handle_rerr(body);
            } else {
                handle_data(body);
            }
        },
        packet.body);
}

void LarNode::handle_rreq(const RouteRequest& rreq) {
    const std::uint64_t key = rreq_key(rreq.origin, rreq.request_id);
    if (!loop_free(rreq.path) || rreq.path.empty() || rreq.path.front() != rreq.origin) {
        env_.metrics().protocol_errors += 1;
        log(LogKind::rreq_drop_malformed, key);
        return;
    }
    log(LogKind::rreq_recv, key, rreq.path.back());

    if (rreq.destination == id_) {
        // Answer every arriving copy: each one carries its own traversal
        // path, and replies are cheap next to the flood itself.
        seen_requests_.insert(key);
        RouteReply rrep;
        rrep.origin = rreq.origin;
        rrep.destination = id_;
        rrep.request_id = rreq.request_id;
        rrep.route = rreq.path;
        rrep.route.push_back(id_);
        rrep.destination_location = {id_, env_.node_position(id_), env_.now(),
                                     env_.node_speed(id_)};
        log(LogKind::rrep_send, key);
        env_.metrics().rrep_sends += 1;
        const NodeId previous_hop = rrep.route[rrep.route.size() - 2];
        env_.send_unicast(id_, previous_hop, control_packet(std::move(rrep)));
        return;
    }
    if (seen_requests_.count(key) > 0) {
        log(LogKind::rreq_drop_dup, key);
        return;
    }
    const Position here = env_.node_position(id_);
    if (!contains(rreq.zone, here)) {
        log(LogKind::rreq_drop_zone, key, 0, here.x, here.y);
        return;
    }
    seen_requests_.insert(key);
    const double jitter = env_.mac_rng(id_).uniform(0.0, params_.rreq_jitter);
    env_.schedule_forward(id_, rreq, jitter);
}

void LarNode::forward_timer_fired(const RouteRequest& rreq) {
    const std::uint64_t key = rreq_key(rreq.origin, rreq.request_id);
    // The node may have moved during the jitter delay; membership counts at
    // the instant of forwarding.
    const Position here = env_.node_position(id_);
    if (!contains(rreq.zone, here)) {
        log(LogKind::rreq_drop_zone, key, 0, here.x, here.y);
        return;
    }
    if (std::find(rreq.path.begin(), rreq.path.end(), id_) != rreq.path.end()) {
        env_.metrics().protocol_errors += 1;
        log(LogKind::rreq_drop_malformed, key);
        return;
    }
    RouteRequest forwarded = rreq;
    forwarded.path.push_back(id_);
    log(LogKind::rreq_forward, key, 0, here.x, here.y);
    env_.metrics().rreq_forwards += 1;
    env_.send_broadcast(id_, control_packet(std::move(forwarded)));
}

void LarNode::handle_rrep(const RouteReply& rrep) {
    const std::uint64_t key = rreq_key(rrep.origin, rrep.request_id);
    const auto self = std::find(rrep.route.begin(), rrep.route.end(), id_);
    if (self == rrep.route.end() || !loop_free(rrep.route)) {
        env_.metrics().protocol_errors += 1;
        return;
    }
    if (id_ != rrep.origin) {
        const std::size_t index = static_cast<std::size_t>(self - rrep.route.begin());
        assert(index > 0);
        const NodeId next = rrep.route[index - 1];
        log(LogKind::rrep_relay, key, next);
        env_.send_unicast(id_, next, control_packet(rrep));
        return;
    }

    log(LogKind::rrep_recv, key);
    route_cache_[rrep.destination] = {rrep.route, env_.now()};
    merge_location(rrep.destination_location);
    if (EventLog* out = env_.event_log()) {
        out->append_route({env_.now(), id_, key, rrep.route});
    }
    log(LogKind::route_installed, key, rrep.route.size());

    const auto disc = discoveries_.find(rrep.destination);
    if (disc != discoveries_.end()) {
        std::deque<DataPacket> pending = std::move(disc->second.pending);
        discoveries_.erase(disc);
        for (DataPacket& packet : pending) {
            log(LogKind::data_send, packet.uid);
            send_on_route(packet, rrep.route);
        }
    }
}

void LarNode::handle_rerr(const RouteError& rerr) {
    const auto self = std::find(rerr.route.begin(), rerr.route.end(), id_);
    if (self == rerr.route.end()) {
        env_.metrics().protocol_errors += 1;
        return;
    }
    if (id_ == rerr.route.front()) {
        const NodeId destination = rerr.route.back();
        log(LogKind::rerr_recv, destination, rerr.dead_next_hop);
        route_cache_.erase(destination);
        return;
    }
    const std::size_t index = static_cast<std::size_t>(self - rerr.route.begin());
    env_.send_unicast(id_, rerr.route[index - 1], control_packet(rerr));
}

void LarNode::handle_data(const DataPacket& data) {
    if (data.route.empty() || data.hop_index >= data.route.size() ||
        data.route[data.hop_index] != id_) {
        env_.metrics().protocol_errors += 1;
        return;
    }
    if (id_ == data.route.back()) {
        log(LogKind::data_recv, data.uid);
        env_.packet_delivered(data.uid, env_.now());
        return;
    }
    DataPacket onward = data;
    onward.hop_index += 1;
    const NodeId next = onward.route[onward.hop_index];
    log(LogKind::data_forward, onward.uid, next);
    env_.send_unicast(id_, next, Packet{std::move(onward), data.size_bytes});
}

void LarNode::send_on_route(DataPacket packet, const std::vector<NodeId>& route) {
    assert(route.size() >= 2 && route.front() == id_);
    packet.route = route;
    packet.hop_index = 1;
    const NodeId next = route[1];
    log(LogKind::data_forward, packet.uid, next);
    const std::size_t size = packet.size_bytes;
    env_.send_unicast(id_, next, Packet{std::move(packet), size});
}

void LarNode::discovery_timer_fired(NodeId destination, std::uint32_t attempt) {
    const auto it = discoveries_.find(destination);
    if (it == discoveries_.end() || it->second.attempt != attempt) {
        return;  // stale timer; a reply or a later attempt superseded it
    }
    log(LogKind::discovery_timeout, destination, attempt);
    const bool may_retry = params_.fallback_enabled &&
                           attempt < static_cast<std::uint32_t>(params_.max_discovery_attempts);
    if (may_retry) {
        initiate_discovery(destination, attempt + 1);
        return;
    }
    std::deque<DataPacket> pending = std::move(it->second.pending);
    discoveries_.erase(it);
    log(LogKind::discovery_giveup, destination, pending.size());
    for (const DataPacket& packet : pending) {
        log(LogKind::drop_no_route, packet.uid);
        env_.packet_dropped(packet.uid, PacketFate::dropped_no_route);
    }
}

void LarNode::unicast_failed(const Packet& packet, NodeId target) {
    if (const auto* data = std::get_if<DataPacket>(&packet.body)) {
        env_.metrics().link_failures += 1;
        log(LogKind::drop_link_failure, data->uid, target);
        env_.packet_dropped(data->uid, PacketFate::dropped_link);
        // The failed sender sits at hop_index - 1 on the route.
        const std::size_t sender_index = data->hop_index - 1;
        if (sender_index == 0) {
            // The origin noticed the break itself; the purge is local.
            route_cache_.erase(data->route.back());
            log(LogKind::rerr_recv, data->route.back(), target);
            return;
        }
        RouteError rerr;
        rerr.route = data->route;
        rerr.reporter_index = static_cast<std::uint32_t>(sender_index);
        rerr.dead_next_hop = target;
        log(LogKind::rerr_send, data->uid, target);
        env_.metrics().rerr_sends += 1;
        env_.send_unicast(id_, data->route[sender_index - 1], control_packet(std::move(rerr)));
        return;
    }
    // Lost replies and error notices are not recovered; the origin's
    // discovery timer or the next failure deals with the fallout.
    env_.metrics().link_failures += 1;
}

void LarNode::merge_location(const LocationRecord& record) {
    if (!knows_location(record.node_id) ||
        record.timestamp >= locations_[record.node_id].timestamp) {
        seed_location(record);
    }
}

}  // namespace larsim

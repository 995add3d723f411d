#include "larsim/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace larsim {

Simulation::Simulation(const RunConfig& config, const MobilityTrace* external_trace,
                       EventLog* log)
    : cfg_(config), log_(log) {
    if (cfg_.node_count < 1) {
        throw std::invalid_argument("simulation: need at least one node");
    }
    if (cfg_.simulation_time <= 0.0) {
        throw std::invalid_argument("simulation: simulation_time must be positive");
    }

    if (external_trace != nullptr) {
        trace_ = *external_trace;
        if (trace_.node_count() != cfg_.node_count) {
            throw std::runtime_error(
                "trace has " + std::to_string(trace_.node_count()) + " nodes but the config wants " +
                std::to_string(cfg_.node_count));
        }
        if (trace_.duration() + 1e-9 < cfg_.simulation_time) {
            throw std::runtime_error("trace is shorter than the simulation time");
        }
    } else {
        trace_ = generate_trace(cfg_.node_count, cfg_.simulation_time, cfg_.mobility, cfg_.grid,
                                cfg_.seed);
    }

    nodes_.reserve(cfg_.node_count);
    mac_rngs_.reserve(cfg_.node_count);
    tx_free_.assign(cfg_.node_count, 0.0);
    for (NodeId node = 0; node < static_cast<NodeId>(cfg_.node_count); ++node) {
        nodes_.emplace_back(node, cfg_.protocol, *this);
        mac_rngs_.emplace_back(derive_seed(cfg_.seed, SeedStream::mac, node));
    }

    if (cfg_.protocol.seed_location_tables) {
        for (NodeId node = 0; node < static_cast<NodeId>(cfg_.node_count); ++node) {
            for (NodeId other = 0; other < static_cast<NodeId>(cfg_.node_count); ++other) {
                nodes_[node].seed_location(
                    {other, trace_.sample(other, 0), 0.0, cfg_.mobility.mean_speed});
            }
        }
    }

    Rng traffic_rng(derive_seed(cfg_.seed, SeedStream::traffic));
    flows_ = make_flows(cfg_.n_flows, cfg_.node_count, cfg_.simulation_time, cfg_.warmup,
                        cfg_.flow_interval, cfg_.packet_size, traffic_rng);

    std::uint64_t uid = 0;
    for (const CbrFlow& flow : flows_) {
        const int count = flow_packet_count(flow);
        for (int k = 0; k < count; ++k) {
            queue_.push(flow_send_time(flow, k),
                        EvAppSend{flow.flow_id, static_cast<std::uint32_t>(k), uid++});
        }
    }
    metrics_.reserve_packets(uid);

    const double interval = trace_.interval();
    for (int tick = 1; tick * interval <= cfg_.simulation_time + 1e-9; ++tick) {
        queue_.push(tick * interval, EvMobilityTick{tick});
    }
}

Position Simulation::node_position(NodeId node) const {
    return trace_.position_at(node, now_);
}

double Simulation::node_speed(NodeId node) const {
    // Average speed over the surrounding mobility sample interval; this is
    // what the node can honestly advertise about itself.
    const double interval = trace_.interval();
    int tick = static_cast<int>(now_ / interval);
    tick = std::min(tick, trace_.tick_count() - 2);
    tick = std::max(tick, 0);
    const Position a = trace_.sample(node, tick);
    const Position b = trace_.sample(node, tick + 1);
    return distance(a, b) / interval;
}

void Simulation::send_broadcast(NodeId from, Packet packet) {
    queue_transmission(from, std::move(packet), std::nullopt, 0);
}

void Simulation::send_unicast(NodeId from, NodeId to, Packet packet) {
    // Local sensing: a target already out of range fails without occupying
    // the channel. Collisions are discovered at transmission end instead.
    if (distance(node_position(from), node_position(to)) > cfg_.radio.range) {
        nodes_[from].unicast_failed(packet, to);
        return;
    }
    queue_transmission(from, std::move(packet), to, 0);
}

void Simulation::queue_transmission(NodeId from, Packet packet, std::optional<NodeId> target,
                                    int attempt) {
    const double start = std::max(now_, tx_free_[from]);
    const double end = start + tx_duration(packet.size_bytes, cfg_.radio);
    tx_free_[from] = end;
    const auto tx_id = static_cast<std::uint32_t>(tx_table_.size());
    tx_table_.push_back({from, start, end, target});
    if (cfg_.contention) {
        active_.push_back(tx_id);
    }
    pending_tx_.emplace(tx_id, PendingTx{std::move(packet), attempt});
    queue_.push(end, EvTxEnd{tx_id});
}

std::vector<Position> Simulation::positions_at(double t) const {
    std::vector<Position> out(cfg_.node_count);
    for (NodeId node = 0; node < static_cast<NodeId>(cfg_.node_count); ++node) {
        out[node] = trace_.position_at(node, t);
    }
    return out;
}

std::vector<Transmission> Simulation::collision_set(std::uint32_t tx_id) const {
    std::vector<Transmission> out;
    out.reserve(cfg_.contention ? active_.size() : 1);
    out.push_back(tx_table_[tx_id]);
    if (cfg_.contention) {
        for (const std::uint32_t other : active_) {
            if (other != tx_id) {
                out.push_back(tx_table_[other]);
            }
        }
    }
    return out;
}

void Simulation::prune_active() {
    // A frame can only overlap transmissions ending no earlier than one
    // maximum frame length before now; 50 ms is far beyond that.
    const double horizon = now_ - 0.05;
    std::erase_if(active_, [&](std::uint32_t id) { return tx_table_[id].end < horizon; });
}

void Simulation::schedule_forward(NodeId node, RouteRequest rreq, double delay) {
    queue_.push(now_ + delay, EvForwardRreq{node, std::move(rreq)});
}

void Simulation::schedule_discovery_timer(NodeId node, NodeId destination, std::uint32_t attempt,
                                          double delay) {
    queue_.push(now_ + delay, EvDiscoveryTimer{node, destination, attempt});
}

void Simulation::packet_delivered(std::uint64_t uid, double time) {
    metrics_.record_delivery(uid, time);
}

void Simulation::packet_dropped(std::uint64_t uid, PacketFate fate) {
    metrics_.record_drop(uid, fate);
}

void Simulation::handle(EvMobilityTick& ev) {
    prune_active();
    assert([&] {
        const Position p = trace_.sample(0, std::min(ev.tick, trace_.tick_count() - 1));
        return p.x >= -1e-6 && p.x <= cfg_.grid.area_width + 1e-6 && p.y >= -1e-6 &&
               p.y <= cfg_.grid.area_height + 1e-6;
    }());
    (void)ev;
}

void Simulation::handle(EvAppSend& ev) {
    const CbrFlow& flow = flows_[ev.flow_id];
    metrics_.record_send(ev.uid, now_);
    DataPacket packet;
    packet.uid = ev.uid;
    packet.source = flow.source;
    packet.destination = flow.destination;
    packet.flow_id = ev.flow_id;
    packet.seq = ev.seq;
    packet.app_send_time = now_;
    packet.size_bytes = flow.packet_size;
    nodes_[flow.source].app_send(packet);
}

void Simulation::handle(EvTxEnd& ev) {
    const Transmission tx = tx_table_[ev.tx_id];
    auto pending_it = pending_tx_.find(ev.tx_id);
    assert(pending_it != pending_tx_.end());
    PendingTx pending = std::move(pending_it->second);
    pending_tx_.erase(pending_it);

    const std::vector<Position> positions = positions_at(tx.end);
    const std::vector<Transmission> all = collision_set(ev.tx_id);

    if (!tx.unicast_target.has_value()) {
        const std::vector<Reception> receptions =
            broadcast_receptions(0, all, positions, cfg_.radio);
        const std::size_t neighbor_count = neighbors(tx.sender, positions, cfg_.radio).size();
        metrics_.collisions += neighbor_count - receptions.size();
        for (std::size_t i = 0; i < receptions.size(); ++i) {
            const Reception& rx = receptions[i];
            Packet copy = (i + 1 == receptions.size()) ? std::move(pending.packet)
                                                       : pending.packet;
            queue_.push(rx.time, EvReception{rx.receiver, tx.sender, std::move(copy)});
        }
        return;
    }

    const NodeId target = *tx.unicast_target;
    const auto [outcome, rx_time] = unicast_attempt(0, all, positions, cfg_.radio);
    switch (outcome) {
        case UnicastOutcome::delivered:
            queue_.push(rx_time, EvReception{target, tx.sender, std::move(pending.packet)});
            break;
        case UnicastOutcome::out_of_range:
            nodes_[tx.sender].unicast_failed(pending.packet, target);
            break;
        case UnicastOutcome::collided:
            metrics_.collisions += 1;
            if (pending.attempt < cfg_.radio.max_unicast_retries) {
                const double backoff =
                    mac_rngs_[tx.sender].uniform(0.0, cfg_.radio.backoff_window);
                queue_.push(now_ + backoff, EvUnicastRetry{tx.sender, target,
                                                           pending.attempt + 1,
                                                           std::move(pending.packet)});
            } else {
                nodes_[tx.sender].unicast_failed(pending.packet, target);
            }
            break;
    }
}

void Simulation::handle(EvReception& ev) {
    nodes_[ev.receiver].receive(ev.packet, ev.sender);
}

void Simulation::handle(EvForwardRreq& ev) {
    nodes_[ev.node].forward_timer_fired(ev.rreq);
}

void Simulation::handle(EvDiscoveryTimer& ev) {
    nodes_[ev.node].discovery_timer_fired(ev.destination, ev.attempt);
}

void Simulation::handle(EvUnicastRetry& ev) {
    queue_transmission(ev.sender, std::move(ev.packet), ev.target, ev.attempt);
}

RunReport Simulation::run() {
    if (ran_) {
        throw std::logic_error("simulation: run() called twice");
    }
    ran_ = true;

    while (!queue_.empty() && queue_.next_time() <= cfg_.simulation_time) {
        Event event = queue_.pop();
        assert(event.time >= now_);
        now_ = event.time;
        std::visit([this](auto& body) { handle(body); }, event.body);
    }

    metrics_.check_conservation();

    RunReport report;
    report.scenario = cfg_.scenario_id;
    report.node_count = cfg_.node_count;
    report.seed = cfg_.seed;
    report.pdr = pdr(metrics_);
    report.avg_delay = avg_delay(metrics_);
    report.sent = metrics_.packets_sent();
    report.received = metrics_.packets_received();
    report.no_traffic = report.sent == 0;
    report.no_delivery = report.received == 0;
    report.collisions = metrics_.collisions;
    report.discoveries = metrics_.discoveries;
    report.dropped_queue = metrics_.fate_count(PacketFate::dropped_queue);
    report.dropped_no_route = metrics_.fate_count(PacketFate::dropped_no_route);
    report.dropped_link = metrics_.fate_count(PacketFate::dropped_link);
    report.in_flight = metrics_.fate_count(PacketFate::in_flight);
    report.protocol_errors = metrics_.protocol_errors;

    if (report.pdr < 0.0 || report.pdr > 1.0) {
        throw std::logic_error("simulation: packet delivery ratio out of range");
    }
    return report;
}

}  // namespace larsim

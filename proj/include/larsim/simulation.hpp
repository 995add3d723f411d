#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "larsim/event.hpp"
#include "larsim/eventlog.hpp"
#include "larsim/metrics.hpp"
#include "larsim/mobility.hpp"
#include "larsim/radio.hpp"
#include "larsim/routing.hpp"
#include "larsim/traffic.hpp"

namespace larsim {

// Everything one simulation run needs. Produced from a ScenarioConfig by
// make_run_config, or built directly in tests.
struct RunConfig {
    int scenario_id = 0;  // 0 = custom
    GridSpec grid;
    MobilityParams mobility;
    RadioParams radio;
    ProtocolParams protocol;
    int node_count = 25;
    double simulation_time = 1000.0;
    int n_flows = 10;
    double flow_interval = 0.25;
    std::size_t packet_size = 512;
    double warmup = 10.0;  // flows run from warmup to simulation_time - warmup
    bool contention = true;
    std::uint64_t seed = 1;
};

// One deterministic discrete-event run: a single thread owns the event loop,
// so identical (config, seed) pairs give bit-identical reports and logs.
// Distinct runs share nothing and may execute on parallel threads.
class Simulation : public RouterEnv {
  public:
    // Without an external trace the constructor generates mobility from the
    // config seed. An imported trace replaces the mobility engine entirely
    // (replay); the traffic and MAC streams are drawn the same way in both
    // modes, so replaying an exported trace reproduces the live run.
    Simulation(const RunConfig& config, const MobilityTrace* external_trace = nullptr,
               EventLog* log = nullptr);

    RunReport run();

    const MobilityTrace& trace() const { return trace_; }
    const std::vector<CbrFlow>& flows() const { return flows_; }
    const MetricsAccumulator& metrics_view() const { return metrics_; }

    // RouterEnv interface (called by the per-node protocol machines).
    double now() const override { return now_; }
    Position node_position(NodeId node) const override;
    double node_speed(NodeId node) const override;
    void send_broadcast(NodeId from, Packet packet) override;
    void send_unicast(NodeId from, NodeId to, Packet packet) override;
    void schedule_forward(NodeId node, RouteRequest rreq, double delay) override;
    void schedule_discovery_timer(NodeId node, NodeId destination, std::uint32_t attempt,
                                  double delay) override;
    void packet_delivered(std::uint64_t uid, double time) override;
    void packet_dropped(std::uint64_t uid, PacketFate fate) override;
    MetricsAccumulator& metrics() override { return metrics_; }
    EventLog* event_log() override { return log_; }
    Rng& mac_rng(NodeId node) override { return mac_rngs_[node]; }

  private:
    struct PendingTx {
        Packet packet;
        int attempt = 0;
    };

    void queue_transmission(NodeId from, Packet packet, std::optional<NodeId> target,
                            int attempt);
    std::vector<Position> positions_at(double t) const;
    // Transmissions that matter for collision checks against tx_id; the
    // checked transmission itself sits at index 0.
    std::vector<Transmission> collision_set(std::uint32_t tx_id) const;
    void prune_active();

    void handle(EvMobilityTick& ev);
    void handle(EvAppSend& ev);
    void handle(EvTxEnd& ev);
    void handle(EvReception& ev);
    void handle(EvForwardRreq& ev);
    void handle(EvDiscoveryTimer& ev);
    void handle(EvUnicastRetry& ev);

    RunConfig cfg_;
    MobilityTrace trace_;
    EventLog* log_ = nullptr;

    EventQueue queue_;
    double now_ = 0.0;
    bool ran_ = false;

    std::vector<LarNode> nodes_;
    std::vector<Rng> mac_rngs_;
    std::vector<CbrFlow> flows_;
    MetricsAccumulator metrics_;

    std::vector<Transmission> tx_table_;
    std::unordered_map<std::uint32_t, PendingTx> pending_tx_;
    std::vector<std::uint32_t> active_;   // candidates for interval overlap
    std::vector<double> tx_free_;         // per node: when its radio is idle
};

}  // namespace larsim

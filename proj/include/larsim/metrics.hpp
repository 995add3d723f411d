#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "larsim/geometry.hpp"

namespace larsim {

// Terminal state of an application packet. Every offered packet ends a run in
// exactly one of these; `in_flight` covers packets the run ended around.
enum class PacketFate : std::uint8_t {
    in_flight,
    delivered,
    dropped_queue,       // pushed out of a full pending queue
    dropped_no_route,    // discovery gave up
    dropped_link,        // unicast retries exhausted or next hop out of range
};

// Per-run counters feeding the packet delivery ratio and the average
// end-to-end delay. "Sent" counts packets offered by the application,
// including ones later dropped while queued.
class MetricsAccumulator {
  public:
    void reserve_packets(std::uint64_t count);

    void record_send(std::uint64_t uid, double time);
    void record_delivery(std::uint64_t uid, double time);
    void record_drop(std::uint64_t uid, PacketFate fate);

    std::uint64_t packets_sent() const { return packets_sent_; }
    std::uint64_t packets_received() const { return packets_received_; }
    double delay_sum() const { return delay_sum_; }

    double send_time(std::uint64_t uid) const { return send_time_[uid]; }
    PacketFate fate(std::uint64_t uid) const { return fate_[uid]; }
    std::uint64_t fate_count(PacketFate fate) const;

    // Counts must sum to packets_sent; throws std::logic_error otherwise.
    void check_conservation() const;

    std::uint64_t collisions = 0;        // receptions destroyed by overlap
    std::uint64_t discoveries = 0;       // route request broadcasts by origins
    std::uint64_t rreq_forwards = 0;
    std::uint64_t rrep_sends = 0;
    std::uint64_t rerr_sends = 0;
    std::uint64_t link_failures = 0;
    std::uint64_t protocol_errors = 0;   // malformed packets seen

  private:
    std::uint64_t packets_sent_ = 0;
    std::uint64_t packets_received_ = 0;
    double delay_sum_ = 0.0;
    std::vector<double> send_time_;
    std::vector<PacketFate> fate_;
    std::vector<bool> sent_;
};

// packets_received / packets_sent; 0 when nothing was sent (flag travels in
// RunReport::no_traffic).
double pdr(const MetricsAccumulator& acc);

// delay_sum / packets_received over delivered packets only; 0 when nothing
// was delivered.
double avg_delay(const MetricsAccumulator& acc);

struct RunReport {
    int scenario = 0;  // 0 = custom
    int node_count = 0;
    std::uint64_t seed = 0;
    double pdr = 0.0;
    double avg_delay = 0.0;  // seconds
    bool no_traffic = false;
    bool no_delivery = false;
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::uint64_t collisions = 0;
    std::uint64_t discoveries = 0;
    std::uint64_t dropped_queue = 0;
    std::uint64_t dropped_no_route = 0;
    std::uint64_t dropped_link = 0;
    std::uint64_t in_flight = 0;
    std::uint64_t protocol_errors = 0;
};

struct ScenarioSummary {
    int scenario = 0;
    int node_count = 0;
    int runs = 0;
    double pdr_mean = 0.0, pdr_min = 0.0, pdr_max = 0.0, pdr_stddev = 0.0;
    double delay_mean = 0.0, delay_min = 0.0, delay_max = 0.0, delay_stddev = 0.0;
    double sent_mean = 0.0, received_mean = 0.0;
    double collisions_mean = 0.0, discoveries_mean = 0.0;
};

// Mean/min/max/stddev across the seeds of one (scenario, node_count) cell.
// Reports must agree on scenario and node_count; an empty list is rejected.
ScenarioSummary aggregate(std::span<const RunReport> reports);

}  // namespace larsim

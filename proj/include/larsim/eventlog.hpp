#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "larsim/geometry.hpp"

namespace larsim {

enum class LogKind : std::uint8_t {
    rreq_send,       // origin broadcasts a fresh request; a=key, b=attempt
    rreq_recv,       // a=key, b=sender
    rreq_forward,    // rebroadcast; a=key, x/y = forwarder position
    rreq_drop_dup,   // a=key
    rreq_drop_zone,  // a=key, x/y = position that failed the zone test
    rreq_drop_malformed,
    rrep_send,    // destination answers; a=key
    rrep_relay,   // a=key, b=next hop
    rrep_recv,    // reached the origin; a=key
    route_installed,  // a=key, b=route length
    rerr_send,    // a=uid of the dropped packet, b=dead next hop
    rerr_recv,    // a=destination whose route was purged
    data_send,    // a=uid
    data_enqueued,   // a=uid
    data_forward,    // a=uid, b=next hop
    data_recv,       // a=uid (delivered at destination)
    drop_queue_overflow,  // a=uid
    drop_no_route,        // a=uid
    drop_link_failure,    // a=uid, b=dead next hop
    discovery_start,    // a=destination, b=attempt
    discovery_timeout,  // a=destination, b=attempt that expired
    discovery_giveup,   // a=destination, b=packets dropped
};

const char* log_kind_name(LogKind kind);

struct LogRecord {
    double time = 0.0;
    NodeId node = 0;
    LogKind kind = LogKind::rreq_send;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    double x = 0.0;
    double y = 0.0;
};

// (origin, request_id) -> 64-bit key used in log records.
inline std::uint64_t rreq_key(NodeId origin, std::uint32_t request_id) {
    return (static_cast<std::uint64_t>(origin) << 32) | request_id;
}

// Request zone as issued, kept alongside the stream so checkers can verify
// flood containment without re-deriving protocol state.
struct ZoneRecord {
    std::uint64_t key = 0;
    RequestZone zone;
    bool whole_area = false;
};

// Route as installed at an origin, for loop-freedom/validity audits.
struct RouteRecord {
    double time = 0.0;
    NodeId origin = 0;
    std::uint64_t key = 0;
    std::vector<NodeId> route;
};

// In-memory routing event stream. Kept optional: runs pass a null log when
// they only need the metrics.
class EventLog {
  public:
    void append(const LogRecord& rec) { records_.push_back(rec); }
    void append_zone(const ZoneRecord& rec) { zones_.push_back(rec); }
    void append_route(const RouteRecord& rec) { routes_.push_back(rec); }

    const std::vector<LogRecord>& records() const { return records_; }
    const std::vector<ZoneRecord>& zones() const { return zones_; }
    const std::vector<RouteRecord>& routes() const { return routes_; }

    void write_text(std::ostream& out) const;
    std::string text() const;

  private:
    std::vector<LogRecord> records_;
    std::vector<ZoneRecord> zones_;
    std::vector<RouteRecord> routes_;
};

}  // namespace larsim

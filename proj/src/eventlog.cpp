#include "larsim/eventlog.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace larsim {

const char* log_kind_name(LogKind kind) {
    switch (kind) {
        case LogKind::rreq_send: return "rreq-send";
        case LogKind::rreq_recv: return "rreq-recv";
        case LogKind::rreq_forward: return "rreq-forward";
        case LogKind::rreq_drop_dup: return "rreq-drop-dup";
        case LogKind::rreq_drop_zone: return "rreq-drop-zone";
        case LogKind::rreq_drop_malformed: return "rreq-drop-malformed";
        case LogKind::rrep_send: return "rrep-send";
        case LogKind::rrep_relay: return "rrep-relay";
        case LogKind::rrep_recv: return "rrep-recv";
        case LogKind::route_installed: return "route-installed";
        case LogKind::rerr_send: return "rerr-send";
        case LogKind::rerr_recv: return "rerr-recv";
        case LogKind::data_send: return "data-send";
        case LogKind::data_enqueued: return "data-enqueued";
        case LogKind::data_forward: return "data-forward";
        case LogKind::data_recv: return "data-recv";
        case LogKind::drop_queue_overflow: return "drop-queue-overflow";
        case LogKind::drop_no_route: return "drop-no-route";
        case LogKind::drop_link_failure: return "drop-link-failure";
        case LogKind::discovery_start: return "discovery-start";
        case LogKind::discovery_timeout: return "discovery-timeout";
        case LogKind::discovery_giveup: return "discovery-giveup";
    }
    return "unknown";
}

void EventLog::write_text(std::ostream& out) const {
    char buf[192];
    for (const ZoneRecord& z : zones_) {
        std::snprintf(buf, sizeof(buf), "zone key=%llu rect=[%.6f,%.6f]x[%.6f,%.6f]%s\n",
                      static_cast<unsigned long long>(z.key), z.zone.x_min, z.zone.x_max,
                      z.zone.y_min, z.zone.y_max, z.whole_area ? " whole-area" : "");
        out << buf;
    }
    for (const LogRecord& r : records_) {
        std::snprintf(buf, sizeof(buf), "%.9f node=%u %s a=%llu b=%llu pos=(%.6f,%.6f)\n",
                      r.time, r.node, log_kind_name(r.kind),
                      static_cast<unsigned long long>(r.a),
                      static_cast<unsigned long long>(r.b), r.x, r.y);
        out << buf;
    }
    for (const RouteRecord& r : routes_) {
        std::snprintf(buf, sizeof(buf), "route %.9f origin=%u key=%llu hops=", r.time, r.origin,
                      static_cast<unsigned long long>(r.key));
        out << buf;
        for (std::size_t i = 0; i < r.route.size(); ++i) {
            out << (i ? "-" : "") << r.route[i];
        }
        out << "\n";
    }
}

std::string EventLog::text() const {
    std::ostringstream out;
    write_text(out);
    return out.str();
}

}  // namespace larsim

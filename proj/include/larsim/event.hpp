#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "larsim/packet.hpp"

namespace larsim {

// Event payloads. The five kinds map onto: mobility-update, app-send,
// transmission-end, reception, and the timer family (request forwarding,
// discovery deadline, unicast retry).
struct EvMobilityTick {
    int tick = 0;
};

struct EvAppSend {
    std::uint32_t flow_id = 0;
    std::uint32_t seq = 0;
    std::uint64_t uid = 0;
};

struct EvTxEnd {
    std::uint32_t tx_id = 0;
};

struct EvReception {
    NodeId receiver = 0;
    NodeId sender = 0;
    Packet packet;
};

struct EvForwardRreq {
    NodeId node = 0;
    RouteRequest rreq;
};

struct EvDiscoveryTimer {
    NodeId node = 0;
    NodeId destination = 0;
    std::uint32_t attempt = 0;
};

struct EvUnicastRetry {
    NodeId sender = 0;
    NodeId target = 0;
    int attempt = 0;
    Packet packet;
};

using EventBody = std::variant<EvMobilityTick, EvAppSend, EvTxEnd, EvReception, EvForwardRreq,
                               EvDiscoveryTimer, EvUnicastRetry>;

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // insertion order, breaks time ties deterministically
    EventBody body;
};

// Min-heap on (time, seq). Scheduling into the past throws: handlers may only
// look forward.
class EventQueue {
  public:
    void push(double time, EventBody body) {
        if (time < now_) {
            throw std::logic_error("event scheduled in the past");
        }
        heap_.push_back({time, next_seq_++, std::move(body)});
        std::push_heap(heap_.begin(), heap_.end(), after);
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    double next_time() const { return heap_.front().time; }
    double now() const { return now_; }

    Event pop() {
        std::pop_heap(heap_.begin(), heap_.end(), after);
        Event ev = std::move(heap_.back());
        heap_.pop_back();
        now_ = ev.time;
        return ev;
    }

  private:
    static bool after(const Event& a, const Event& b) {
        if (a.time != b.time) {
            return a.time > b.time;
        }
        return a.seq > b.seq;
    }

    std::vector<Event> heap_;
    std::uint64_t next_seq_ = 0;
    double now_ = 0.0;
};

}  // namespace larsim

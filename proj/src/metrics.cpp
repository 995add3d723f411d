#include "larsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace larsim {

void MetricsAccumulator::reserve_packets(std::uint64_t count) {
    send_time_.resize(count, 0.0);
    fate_.resize(count, PacketFate::in_flight);
    sent_.resize(count, false);
}

void MetricsAccumulator::record_send(std::uint64_t uid, double time) {
    if (uid >= sent_.size() || sent_[uid]) {
        throw std::logic_error("metrics: duplicate or unknown packet send");
    }
    sent_[uid] = true;
    send_time_[uid] = time;
    ++packets_sent_;
}

void MetricsAccumulator::record_delivery(std::uint64_t uid, double time) {
    if (uid >= sent_.size() || !sent_[uid]) {
        throw std::logic_error("metrics: delivery of a packet never sent");
    }
    if (fate_[uid] != PacketFate::in_flight) {
        throw std::logic_error("metrics: packet reached two terminal states");
    }
    fate_[uid] = PacketFate::delivered;
    ++packets_received_;
    const double delay = time - send_time_[uid];
    if (delay <= 0.0) {
        throw std::logic_error("metrics: non-positive end-to-end delay");
    }
    delay_sum_ += delay;
}

void MetricsAccumulator::record_drop(std::uint64_t uid, PacketFate fate) {
    if (uid >= sent_.size() || !sent_[uid]) {
        throw std::logic_error("metrics: drop of a packet never sent");
    }
    if (fate == PacketFate::in_flight || fate == PacketFate::delivered) {
        throw std::logic_error("metrics: record_drop needs a drop fate");
    }
    if (fate_[uid] != PacketFate::in_flight) {
        throw std::logic_error("metrics: packet reached two terminal states");
    }
    fate_[uid] = fate;
}

std::uint64_t MetricsAccumulator::fate_count(PacketFate fate) const {
    std::uint64_t n = 0;
    for (std::uint64_t uid = 0; uid < fate_.size(); ++uid) {
        if (sent_[uid] && fate_[uid] == fate) {
            ++n;
        }
    }
    return n;
}

void MetricsAccumulator::check_conservation() const {
    const std::uint64_t total =
        fate_count(PacketFate::in_flight) + fate_count(PacketFate::delivered) +
        fate_count(PacketFate::dropped_queue) + fate_count(PacketFate::dropped_no_route) +
        fate_count(PacketFate::dropped_link);
    if (total != packets_sent_) {
        throw std::logic_error("metrics: packet conservation violated");
    }
    if (packets_received_ > packets_sent_) {
        throw std::logic_error("metrics: received more packets than sent");
    }
}

double pdr(const MetricsAccumulator& acc) {
    if (acc.packets_sent() == 0) {
        return 0.0;
    }
    return static_cast<double>(acc.packets_received()) /
           static_cast<double>(acc.packets_sent());
}

double avg_delay(const MetricsAccumulator& acc) {
    if (acc.packets_received() == 0) {
        return 0.0;
    }
    return acc.delay_sum() / static_cast<double>(acc.packets_received());
}

namespace {

struct Stats {
    double mean, min, max, stddev;
};

template <typename Get>
Stats stats_over(std::span<const RunReport> reports, Get get) {
    double sum = 0.0;
    double lo = get(reports[0]);
    double hi = lo;
    for (const RunReport& r : reports) {
        const double v = get(r);
        sum += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double mean = sum / static_cast<double>(reports.size());
    double var = 0.0;
    for (const RunReport& r : reports) {
        const double d = get(r) - mean;
        var += d * d;
    }
    var /= static_cast<double>(reports.size());
    return {mean, lo, hi, std::sqrt(var)};
}

}  // namespace

ScenarioSummary aggregate(std::span<const RunReport> reports) {
    if (reports.empty()) {
        throw std::invalid_argument("aggregate: no reports");
    }
    for (const RunReport& r : reports) {
        if (r.scenario != reports[0].scenario || r.node_count != reports[0].node_count) {
            throw std::invalid_argument("aggregate: reports mix scenarios or node counts");
        }
    }
    ScenarioSummary s;
    s.scenario = reports[0].scenario;
    s.node_count = reports[0].node_count;
    s.runs = static_cast<int>(reports.size());
    const Stats p = stats_over(reports, [](const RunReport& r) { return r.pdr; });
    s.pdr_mean = p.mean;
    s.pdr_min = p.min;
    s.pdr_max = p.max;
    s.pdr_stddev = p.stddev;
    const Stats d = stats_over(reports, [](const RunReport& r) { return r.avg_delay; });
    s.delay_mean = d.mean;
    s.delay_min = d.min;
    s.delay_max = d.max;
    s.delay_stddev = d.stddev;
    s.sent_mean = stats_over(reports, [](const RunReport& r) { return double(r.sent); }).mean;
    s.received_mean =
        stats_over(reports, [](const RunReport& r) { return double(r.received); }).mean;
    s.collisions_mean =
        stats_over(reports, [](const RunReport& r) { return double(r.collisions); }).mean;
    s.discoveries_mean =
        stats_over(reports, [](const RunReport& r) { return double(r.discoveries); }).mean;
    return s;
}

}  // namespace larsim

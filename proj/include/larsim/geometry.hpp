#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace larsim {

using NodeId = std::uint32_t;

struct Position {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

inline double distance(const Position& p, const Position& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

// Last known whereabouts of a node: where it was, when, and how fast it was
// moving on average. This is all a source needs to bound where the node can
// be now.
struct LocationRecord {
    NodeId node_id = 0;
    Position position;
    double timestamp = 0.0;  // seconds
    double avg_speed = 0.0;  // m/s, >= 0
};

// Disk the destination must lie in, assuming it moved at most avg_speed since
// the location record was taken.
struct ExpectedZone {
    Position center;
    double radius = 0.0;  // meters
};

// Axis-aligned rectangle; only nodes inside it forward route requests.
struct RequestZone {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
};

inline ExpectedZone expected_zone(const LocationRecord& record, double now) {
    if (now < record.timestamp) {
        throw std::invalid_argument("expected_zone: query time precedes the location timestamp");
    }
    return {record.position, record.avg_speed * (now - record.timestamp)};
}

// Smallest axis-aligned rectangle containing the source point and the whole
// expected-zone disk. Covers every relative placement of source and
// destination, including the source inside the disk.
inline RequestZone request_zone(const Position& source, const ExpectedZone& ez) {
    return {
        std::min(source.x, ez.center.x - ez.radius),
        std::max(source.x, ez.center.x + ez.radius),
        std::min(source.y, ez.center.y - ez.radius),
        std::max(source.y, ez.center.y + ez.radius),
    };
}

// Membership is boundary-inclusive: a node exactly on an edge is in the zone.
inline bool contains(const RequestZone& zone, const Position& p) {
    return zone.x_min <= p.x && p.x <= zone.x_max && zone.y_min <= p.y && p.y <= zone.y_max;
}

inline RequestZone whole_area_zone(double area_width, double area_height) {
    return {0.0, area_width, 0.0, area_height};
}

}  // namespace larsim

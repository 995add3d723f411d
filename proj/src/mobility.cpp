#include "larsim/mobility.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace larsim {

StreetGrid::StreetGrid(const GridSpec& spec) : spec_(spec) {
    if (spec.area_width <= 0.0 || spec.area_height <= 0.0) {
        throw std::invalid_argument("StreetGrid: area dimensions must be positive");
    }
    if (spec.blocks_x < 1 || spec.blocks_y < 1) {
        throw std::invalid_argument("StreetGrid: need at least one block per axis");
    }
    xs_.reserve(spec.blocks_x + 1);
    for (int i = 0; i <= spec.blocks_x; ++i) {
        xs_.push_back(static_cast<double>(i) * spec.area_width / spec.blocks_x);
    }
    ys_.reserve(spec.blocks_y + 1);
    for (int j = 0; j <= spec.blocks_y; ++j) {
        ys_.push_back(static_cast<double>(j) * spec.area_height / spec.blocks_y);
    }
    total_length_ = static_cast<double>(xs_.size()) * spec.area_height +
                    static_cast<double>(ys_.size()) * spec.area_width;
}

int StreetGrid::street_index(const std::vector<double>& lines, double coord, double tol) {
    auto it = std::lower_bound(lines.begin(), lines.end(), coord);
    if (it != lines.end() && std::abs(*it - coord) <= tol) {
        return static_cast<int>(it - lines.begin());
    }
    if (it != lines.begin() && std::abs(*(it - 1) - coord) <= tol) {
        return static_cast<int>(it - lines.begin()) - 1;
    }
    return -1;
}

bool StreetGrid::on_street(const Position& p, Heading heading, double tol) const {
    if (p.x < -tol || p.x > spec_.area_width + tol || p.y < -tol ||
        p.y > spec_.area_height + tol) {
        return false;
    }
    if (is_vertical(heading)) {
        return street_index(xs_, p.x, tol) >= 0;
    }
    return street_index(ys_, p.y, tol) >= 0;
}

namespace {

Heading left_of(Heading h) {
    switch (h) {
        case Heading::north: return Heading::west;
        case Heading::south: return Heading::east;
        case Heading::east: return Heading::north;
        case Heading::west: return Heading::south;
    }
    return h;
}

Heading right_of(Heading h) {
    switch (h) {
        case Heading::north: return Heading::east;
        case Heading::south: return Heading::west;
        case Heading::east: return Heading::south;
        case Heading::west: return Heading::north;
    }
    return h;
}

// A heading is legal at intersection (ix, iy) when the adjacent street
// segment in that direction exists.
bool legal_from(Heading h, int ix, int iy, const StreetGrid& grid) {
    switch (h) {
        case Heading::north: return iy < static_cast<int>(grid.ys().size()) - 1;
        case Heading::south: return iy > 0;
        case Heading::east: return ix < static_cast<int>(grid.xs().size()) - 1;
        case Heading::west: return ix > 0;
    }
    return false;
}

}  // namespace

Heading draw_turn(Heading heading, int ix, int iy, const StreetGrid& grid, double turn_prob,
                  Rng& rng) {
    struct Option {
        Heading heading;
        double weight;
    };
    const Option candidates[3] = {
        {heading, 1.0 - turn_prob},
        {left_of(heading), turn_prob / 2.0},
        {right_of(heading), turn_prob / 2.0},
    };
    Option legal[3];
    int n_legal = 0;
    double total = 0.0;
    for (const Option& c : candidates) {
        if (legal_from(c.heading, ix, iy, grid)) {
            legal[n_legal++] = c;
            total += c.weight;
        }
    }
    assert(n_legal > 0);
    const double u = rng.uniform01();
    if (total <= 0.0) {
        // All legal options carry zero mass (e.g. turn_prob = 0 facing the
        // boundary): fall back to a uniform choice among them.
        return legal[std::min(static_cast<int>(u * n_legal), n_legal - 1)].heading;
    }
    double acc = 0.0;
    for (int i = 0; i < n_legal; ++i) {
        acc += legal[i].weight / total;
        if (u < acc) {
            return legal[i].heading;
        }
    }
    return legal[n_legal - 1].heading;
}

std::vector<VehicleState> init_placement(int n, const StreetGrid& grid,
                                         const MobilityParams& params, Rng& rng) {
    if (n < 1) {
        throw std::invalid_argument("init_placement: need at least one vehicle");
    }
    const GridSpec& spec = grid.spec();
    const double vertical_total = static_cast<double>(grid.xs().size()) * spec.area_height;
    const double p_vertical = vertical_total / grid.total_street_length();
    // Table III scenarios set min_speed above mean_speed; the clamp keeps the
    // speed floor authoritative there.
    const double initial_speed = std::max(params.mean_speed, params.min_speed);

    std::vector<VehicleState> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        VehicleState v;
        if (rng.bernoulli(p_vertical)) {
            const auto i = rng.uniform_index(grid.xs().size());
            v.position.x = grid.xs()[i];
            v.position.y = rng.uniform(0.0, spec.area_height);
            v.heading = rng.bernoulli(0.5) ? Heading::north : Heading::south;
        } else {
            const auto j = rng.uniform_index(grid.ys().size());
            v.position.y = grid.ys()[j];
            v.position.x = rng.uniform(0.0, spec.area_width);
            v.heading = rng.bernoulli(0.5) ? Heading::east : Heading::west;
        }
        v.speed = initial_speed;
        out.push_back(v);
    }
    return out;
}

namespace {

double& moving_coord(VehicleState& s) {
    return is_vertical(s.heading) ? s.position.y : s.position.x;
}

int heading_sign(Heading h) {
    return (h == Heading::north || h == Heading::east) ? 1 : -1;
}

}  // namespace

VehicleState advance(VehicleState state, double dt, const MobilityParams& params,
                     const StreetGrid& grid, Rng& rng) {
    assert(dt > 0.0);
    double remaining = state.speed * dt;
    const double tol = kIntersectionSnapTol;

    while (remaining > 1e-12) {
        const int ix = StreetGrid::street_index(grid.xs(), state.position.x, tol);
        const int iy = StreetGrid::street_index(grid.ys(), state.position.y, tol);
        if (ix >= 0 && iy >= 0) {
            // At an intersection: snap exactly onto it, then decide the turn.
            state.position = {grid.xs()[ix], grid.ys()[iy]};
            state.heading = draw_turn(state.heading, ix, iy, grid, params.turn_prob, rng);
        }

        const std::vector<double>& lines = is_vertical(state.heading) ? grid.ys() : grid.xs();
        double& coord = moving_coord(state);
        const int sign = heading_sign(state.heading);

        // Next street line strictly ahead of the current coordinate.
        int next = -1;
        if (sign > 0) {
            auto it = std::upper_bound(lines.begin(), lines.end(), coord + tol);
            if (it != lines.end()) {
                next = static_cast<int>(it - lines.begin());
            }
        } else {
            auto it = std::lower_bound(lines.begin(), lines.end(), coord - tol);
            if (it != lines.begin()) {
                next = static_cast<int>(it - lines.begin()) - 1;
            }
        }
        assert(next >= 0 && "vehicle heading off the map");

        const double dist = std::abs(lines[next] - coord);
        if (remaining < dist) {
            coord += sign * remaining;
            remaining = 0.0;
        } else {
            coord = lines[next];  // land exactly on the line
            remaining -= dist;
        }
    }
    return state;
}

VehicleState maybe_update_speed(VehicleState state, const MobilityParams& params, Rng& rng) {
    if (rng.bernoulli(params.speed_change_prob)) {
        const double span = std::max(0.0, 2.0 * (params.mean_speed - params.min_speed));
        state.speed = rng.uniform(params.min_speed, params.min_speed + span);
    }
    return state;
}

namespace {

std::int64_t to_um(double meters) {
    return static_cast<std::int64_t>(std::llround(meters * 1e6));
}

}  // namespace

MobilityTrace::MobilityTrace(int node_count, int tick_count, double interval)
    : node_count_(node_count), tick_count_(tick_count), interval_(interval),
      x_um_(static_cast<std::size_t>(node_count) * tick_count, 0),
      y_um_(static_cast<std::size_t>(node_count) * tick_count, 0) {
    assert(node_count >= 0 && tick_count >= 1 && interval > 0.0);
}

void MobilityTrace::set_sample(NodeId node, int tick, const Position& p) {
    const std::size_t idx = static_cast<std::size_t>(node) * tick_count_ + tick;
    x_um_[idx] = to_um(p.x);
    y_um_[idx] = to_um(p.y);
}

Position MobilityTrace::sample(NodeId node, int tick) const {
    const std::size_t idx = static_cast<std::size_t>(node) * tick_count_ + tick;
    return {static_cast<double>(x_um_[idx]) * 1e-6, static_cast<double>(y_um_[idx]) * 1e-6};
}

Position MobilityTrace::position_at(NodeId node, double t) const {
    const double pos = t / interval_;
    if (pos <= 0.0) {
        return sample(node, 0);
    }
    if (pos >= tick_count_ - 1) {
        return sample(node, tick_count_ - 1);
    }
    const int tick = static_cast<int>(pos);
    const double frac = pos - tick;
    const Position a = sample(node, tick);
    const Position b = sample(node, tick + 1);
    return {a.x + (b.x - a.x) * frac, a.y + (b.y - a.y) * frac};
}

MobilityTrace generate_trace(int n, double duration, const MobilityParams& params,
                             const GridSpec& grid, std::uint64_t master_seed) {
    if (params.update_interval <= 0.0) {
        throw std::invalid_argument("generate_trace: update_interval must be positive");
    }
    const StreetGrid streets(grid);
    const int ticks = static_cast<int>(std::ceil(duration / params.update_interval)) + 1;
    MobilityTrace trace(n, ticks, params.update_interval);

    Rng placement_rng(derive_seed(master_seed, SeedStream::placement));
    std::vector<VehicleState> fleet = init_placement(n, streets, params, placement_rng);

    for (NodeId node = 0; node < static_cast<NodeId>(n); ++node) {
        Rng rng(derive_seed(master_seed, SeedStream::mobility, node));
        VehicleState state = fleet[node];
        trace.set_sample(node, 0, state.position);
        for (int tick = 1; tick < ticks; ++tick) {
            state = maybe_update_speed(state, params, rng);
            state = advance(state, params.update_interval, params, streets, rng);
            trace.set_sample(node, tick, state.position);
        }
    }
    return trace;
}

MobilityTrace static_trace(const std::vector<Position>& positions, double duration,
                           double interval) {
    const int ticks = static_cast<int>(std::ceil(duration / interval)) + 1;
    MobilityTrace trace(static_cast<int>(positions.size()), ticks, interval);
    for (NodeId node = 0; node < positions.size(); ++node) {
        for (int tick = 0; tick < ticks; ++tick) {
            trace.set_sample(node, tick, positions[node]);
        }
    }
    return trace;
}

}  // namespace larsim

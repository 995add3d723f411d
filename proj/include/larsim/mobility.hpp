#pragma once

#include <cstdint>
#include <vector>

#include "larsim/geometry.hpp"
#include "larsim/random.hpp"

namespace larsim {

struct GridSpec {
    double area_width = 1000.0;   // meters
    double area_height = 1000.0;  // meters
    int blocks_x = 10;
    int blocks_y = 15;
};

struct MobilityParams {
    double mean_speed = 10.0;        // m/s
    double min_speed = 10.0;         // m/s
    double speed_change_prob = 0.25; // per update interval
    double turn_prob = 0.25;         // total turning mass at an intersection
    double update_interval = 1.0;    // seconds between motion/speed updates
};

enum class Heading : std::uint8_t { north, south, east, west };

inline bool is_vertical(Heading h) { return h == Heading::north || h == Heading::south; }

struct VehicleState {
    Position position;
    Heading heading = Heading::north;
    double speed = 0.0;  // m/s
};

// Street lattice derived from a GridSpec. Street coordinates are computed once
// and reused everywhere so every module compares against bit-identical values.
class StreetGrid {
  public:
    explicit StreetGrid(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    // x coordinates of the vertical streets (blocks_x + 1 of them).
    const std::vector<double>& xs() const { return xs_; }
    // y coordinates of the horizontal streets (blocks_y + 1 of them).
    const std::vector<double>& ys() const { return ys_; }
    double total_street_length() const { return total_length_; }

    // Index of the street line within `tol` of coord, or -1.
    static int street_index(const std::vector<double>& lines, double coord, double tol);

    // True when the position sits on some street line (within tol).
    bool on_street(const Position& p, Heading heading, double tol) const;

  private:
    GridSpec spec_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    double total_length_ = 0.0;
};

// Tolerance for deciding that a coordinate has reached a street line.
inline constexpr double kIntersectionSnapTol = 1e-6;

// Turn decision at intersection (ix, iy): keep heading with probability
// 1 - turn_prob, turn left or right with probability turn_prob / 2 each.
// Headings that would leave the map are removed and the probability mass
// renormalizes over what is left (a corner forces the single legal turn).
// Consumes exactly one draw from rng.
Heading draw_turn(Heading heading, int ix, int iy, const StreetGrid& grid, double turn_prob,
                  Rng& rng);

// Places n vehicles uniformly at random along the total street length.
// Initial speed is mean_speed raised to min_speed when the two conflict.
std::vector<VehicleState> init_placement(int n, const StreetGrid& grid,
                                         const MobilityParams& params, Rng& rng);

// Advances one vehicle by dt seconds, drawing one turn decision per
// intersection reached strictly inside the step. A step that ends exactly on
// an intersection leaves the turn to the next call.
VehicleState advance(VehicleState state, double dt, const MobilityParams& params,
                     const StreetGrid& grid, Rng& rng);

// With probability speed_change_prob, resamples speed uniformly from
// [min_speed, min_speed + span], span = max(0, 2 * (mean_speed - min_speed)).
VehicleState maybe_update_speed(VehicleState state, const MobilityParams& params, Rng& rng);

// Sampled positions of every vehicle on a fixed time grid. Samples are
// quantized to micrometers, which makes the text export/import round trip
// lossless and a replayed run identical to the live one.
class MobilityTrace {
  public:
    MobilityTrace() = default;
    MobilityTrace(int node_count, int tick_count, double interval);

    int node_count() const { return node_count_; }
    int tick_count() const { return tick_count_; }  // samples per node
    double interval() const { return interval_; }
    double duration() const { return (tick_count_ - 1) * interval_; }

    void set_sample(NodeId node, int tick, const Position& p);
    Position sample(NodeId node, int tick) const;

    // Position at an arbitrary time, linearly interpolated between samples.
    // Times outside [0, duration] clamp to the first/last sample.
    Position position_at(NodeId node, double t) const;

    bool operator==(const MobilityTrace& other) const = default;

  private:
    int node_count_ = 0;
    int tick_count_ = 0;
    double interval_ = 1.0;
    std::vector<std::int64_t> x_um_;
    std::vector<std::int64_t> y_um_;
};

// Generates the full trajectory of n vehicles over `duration` seconds.
// Placement draws from derive_seed(master, placement); vehicle i moves on its
// own stream derive_seed(master, mobility, i), so trajectories do not depend
// on the order vehicles are advanced in.
MobilityTrace generate_trace(int n, double duration, const MobilityParams& params,
                             const GridSpec& grid, std::uint64_t master_seed);

// Constant-position trace, mostly for tests and hand-built topologies.
MobilityTrace static_trace(const std::vector<Position>& positions, double duration,
                           double interval = 1.0);

}  // namespace larsim

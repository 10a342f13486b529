#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tsc::sim {

// Approach / boundary side. Also the slot order used everywhere a
// per-direction layout appears (observations, neighbor encodings).
enum class Dir : int { N = 0, S = 1, E = 2, W = 3 };

constexpr std::array<Dir, 4> kDirs = {Dir::N, Dir::S, Dir::E, Dir::W};

const char *dir_name(Dir d);
Dir opposite(Dir d);

constexpr int kCycleSeconds = 40;
// Green-duration choices for the north-south phase; the east-west phase
// gets the remainder of the 40 s cycle.
constexpr std::array<int, 5> kGreenChoices = {10, 15, 20, 25, 30};
constexpr int kActionCount = 5;

struct SignalPhasePlan {
    int ns_green = 20;
    long long cycle_offset = 0;

    int ew_green() const { return kCycleSeconds - ns_green; }
};

enum class SignalState { NSGreen, EWGreen };

// Returns the active phase of `plan` at time t.
SignalState signal_state(const SignalPhasePlan &plan, long long t);

// Periodic arrival source on one boundary side. A vehicle is due every
// tfr_k seconds until ivn vehicles have been released.
struct Entrance {
    Dir side = Dir::N;
    int index = 1; // 1-based column (N/S sides) or row (E/W sides)
    long long ivn = 0;
    int tfr_k = 1;

    bool operator==(const Entrance &) const = default;
};

struct Lane {
    int id = -1;
    int cells = 0;
    Dir heading = Dir::S;         // travel direction
    int downstream = -1;          // intersection index, -1 = boundary exit
    int next_lane = -1;           // continuation lane, -1 = leaves the grid
    // Approach slot this lane occupies at its downstream intersection:
    // a southbound lane arrives on the north side.
    Dir approach() const { return opposite(heading); }
    bool ns_axis() const { return heading == Dir::N || heading == Dir::S; }
};

struct Intersection {
    int index = -1;
    int row = 0, col = 0;
    SignalPhasePlan plan;
    int pending_ns_green = 20;            // latched at the next cycle boundary
    std::array<int, 4> incoming{-1, -1, -1, -1}; // lane id per approach (N,S,E,W)
    std::array<int, 4> neighbors{-1, -1, -1, -1}; // intersection index per side
    int neighbor_count() const;
};

// Static grid topology: rows x cols signalized intersections, one lane per
// directed link, every lane the same length in vehicle-sized cells.
class RoadNetwork {
  public:
    RoadNetwork() = default;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double cell_length() const { return cell_length_; }
    int lane_cells() const { return lane_cells_; }

    const std::vector<Lane> &lanes() const { return lanes_; }
    const std::vector<Intersection> &intersections() const { return intersections_; }
    std::vector<Intersection> &intersections() { return intersections_; }
    const Intersection &intersection_at(int row, int col) const;
    int intersection_index(int row, int col) const { return row * cols_ + col; }

    // First lane of the straight route entering from `side` at the given
    // 1-based column (N/S) or row (E/W).
    int entry_lane(Dir side, int index) const;

    friend RoadNetwork build_grid(int rows, int cols, double edge_length, double cell_length);

  private:
    int rows_ = 0, cols_ = 0;
    double cell_length_ = 0.0;
    int lane_cells_ = 0;
    std::vector<Lane> lanes_;
    std::vector<Intersection> intersections_;
};

// Throws std::invalid_argument when edge_length is not a whole multiple of
// cell_length or the dimensions are degenerate.
RoadNetwork build_grid(int rows, int cols, double edge_length, double cell_length);

} // namespace tsc::sim

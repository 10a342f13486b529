#include "tsc/sim/network.hpp"

#include <cmath>
#include <stdexcept>

namespace tsc::sim {

const char *dir_name(Dir d) {
    switch (d) {
    case Dir::N: return "north";
    case Dir::S: return "south";
    case Dir::E: return "east";
    case Dir::W: return "west";
    }
    return "?";
}

Dir opposite(Dir d) {
    switch (d) {
    case Dir::N: return Dir::S;
    case Dir::S: return Dir::N;
    case Dir::E: return Dir::W;
    case Dir::W: return Dir::E;
    }
    return Dir::N;
}

SignalState signal_state(const SignalPhasePlan &plan, long long t) {
    long long phase = (t - plan.cycle_offset) % kCycleSeconds;
    if (phase < 0)
        phase += kCycleSeconds;
    return phase < plan.ns_green ? SignalState::NSGreen : SignalState::EWGreen;
}

int Intersection::neighbor_count() const {
    int n = 0;
    for (int id : neighbors)
        if (id >= 0)
            ++n;
    return n;
}

const Intersection &RoadNetwork::intersection_at(int row, int col) const {
    return intersections_.at(static_cast<std::size_t>(intersection_index(row, col)));
}

int RoadNetwork::entry_lane(Dir side, int index) const {
    const int limit = (side == Dir::N || side == Dir::S) ? cols_ : rows_;
    if (index < 1 || index > limit)
        throw std::invalid_argument("entrance index out of range for side " +
                                    std::string(dir_name(side)));
    // Entry lanes are the first lane of each chain; chains are built in a
    // fixed order below, so look the lane up by heading and position.
    for (const Lane &lane : lanes_) {
        if (lane.heading != opposite(side))
            continue;
        if (lane.downstream < 0)
            continue;
        const Intersection &i = intersections_[static_cast<std::size_t>(lane.downstream)];
        bool first = false;
        switch (side) {
        case Dir::N: first = (i.row == 0 && i.col == index - 1); break;
        case Dir::S: first = (i.row == rows_ - 1 && i.col == index - 1); break;
        case Dir::W: first = (i.col == 0 && i.row == index - 1); break;
        case Dir::E: first = (i.col == cols_ - 1 && i.row == index - 1); break;
        }
        if (first)
            return lane.id;
    }
    throw std::logic_error("entry lane lookup failed");
}

RoadNetwork build_grid(int rows, int cols, double edge_length, double cell_length) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid must have at least one row and column");
    if (cell_length <= 0.0 || edge_length <= 0.0)
        throw std::invalid_argument("edge_length and cell_length must be positive");
    const double ratio = edge_length / cell_length;
    const int cells = static_cast<int>(std::llround(ratio));
    if (cells < 1 || std::abs(ratio - cells) > 1e-9)
        throw std::invalid_argument("edge_length must be a whole multiple of cell_length");

    RoadNetwork net;
    net.rows_ = rows;
    net.cols_ = cols;
    net.cell_length_ = cell_length;
    net.lane_cells_ = cells;

    net.intersections_.resize(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Intersection &i = net.intersections_[static_cast<std::size_t>(r * cols + c)];
            i.index = r * cols + c;
            i.row = r;
            i.col = c;
            if (r > 0)
                i.neighbors[static_cast<int>(Dir::N)] = (r - 1) * cols + c;
            if (r < rows - 1)
                i.neighbors[static_cast<int>(Dir::S)] = (r + 1) * cols + c;
            if (c < cols - 1)
                i.neighbors[static_cast<int>(Dir::E)] = r * cols + c + 1;
            if (c > 0)
                i.neighbors[static_cast<int>(Dir::W)] = r * cols + c - 1;
        }
    }

    // One chain of lanes per heading: boundary -> intersections -> boundary,
    // built in a fixed order so lane ids (and the movement update order)
    // are deterministic.
    auto add_chain = [&](Dir heading, const std::vector<int> &nodes) {
        int prev = -1;
        for (std::size_t k = 0; k <= nodes.size(); ++k) {
            Lane lane;
            lane.id = static_cast<int>(net.lanes_.size());
            lane.cells = cells;
            lane.heading = heading;
            lane.downstream = k < nodes.size() ? nodes[k] : -1;
            net.lanes_.push_back(lane);
            if (prev >= 0)
                net.lanes_[static_cast<std::size_t>(prev)].next_lane = lane.id;
            if (lane.downstream >= 0) {
                Intersection &i = net.intersections_[static_cast<std::size_t>(lane.downstream)];
                i.incoming[static_cast<int>(lane.approach())] = lane.id;
            }
            prev = lane.id;
        }
    };

    for (int c = 0; c < cols; ++c) {
        std::vector<int> down, up;
        for (int r = 0; r < rows; ++r)
            down.push_back(r * cols + c);
        for (int r = rows - 1; r >= 0; --r)
            up.push_back(r * cols + c);
        add_chain(Dir::S, down); // enters from the north boundary
        add_chain(Dir::N, up);   // enters from the south boundary
    }
    for (int r = 0; r < rows; ++r) {
        std::vector<int> east, west;
        for (int c = 0; c < cols; ++c)
            east.push_back(r * cols + c);
        for (int c = cols - 1; c >= 0; --c)
            west.push_back(r * cols + c);
        add_chain(Dir::E, east); // enters from the west boundary
        add_chain(Dir::W, west); // enters from the east boundary
    }

    return net;
}

} // namespace tsc::sim

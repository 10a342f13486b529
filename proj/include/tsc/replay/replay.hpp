#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <vector>

#include "tsc/rng.hpp"

namespace tsc::replay {

// One agent's transition. Neighbor actions are slot-ordered N,S,E,W with -1
// marking an absent neighbor.
struct Experience {
    std::vector<double> state;
    int own_action = 0;
    std::array<int, 4> neighbor_actions{-1, -1, -1, -1};
    double reward = 0.0;
    std::vector<double> next_state;
};

// B uniform draws with replacement from [0, size).
std::vector<std::size_t> sample_indices(std::size_t size, std::size_t batch, Rng &rng);

// Bounded FIFO memory; the oldest entry is evicted first.
class ReplayBuffer {
  public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Experience e);

    // Uniform with replacement. Throws std::logic_error when fewer than
    // `batch` entries are stored; callers gate on size.
    std::vector<Experience> sample(std::size_t batch, Rng &rng) const;

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Experience &at(std::size_t i) const { return entries_.at(i); }

  private:
    std::size_t capacity_;
    std::deque<Experience> entries_;
};

} // namespace tsc::replay

#include "tsc/replay/replay.hpp"

#include <stdexcept>

namespace tsc::replay {

std::vector<std::size_t> sample_indices(std::size_t size, std::size_t batch, Rng &rng) {
    if (size == 0)
        throw std::logic_error("cannot sample from an empty buffer");
    std::uniform_int_distribution<std::size_t> dist(0, size - 1);
    std::vector<std::size_t> idx(batch);
    for (auto &i : idx)
        i = dist(rng);
    return idx;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0)
        throw std::invalid_argument("replay capacity must be positive");
}

void ReplayBuffer::push(Experience e) {
    entries_.push_back(std::move(e));
    if (entries_.size() > capacity_)
        entries_.pop_front();
}

std::vector<Experience> ReplayBuffer::sample(std::size_t batch, Rng &rng) const {
    if (entries_.size() < batch)
        throw std::logic_error("not enough samples in replay buffer");
    std::vector<Experience> out;
    out.reserve(batch);
    for (std::size_t i : sample_indices(entries_.size(), batch, rng))
        out.push_back(entries_[i]);
    return out;
}

} // namespace tsc::replay

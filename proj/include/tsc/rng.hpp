#pragma once

#include <cstdint>
#include <random>

namespace tsc {

using Rng = std::mt19937_64;

inline int uniform_int(Rng &rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

} // namespace tsc

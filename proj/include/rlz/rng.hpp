#pragma once

#include <cstdint>
#include <random>

namespace rlz {

// Unbiased draw from [0, bound). Hand-rolled rejection sampling so results are
// identical across standard library implementations.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  if (bound <= 1) return 0;
  const uint64_t limit = (UINT64_MAX / bound) * bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace rlz

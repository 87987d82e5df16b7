#pragma once

#include <cstdint>

namespace otto {

// Counter-based generator: the splitmix64 finalizer applied to
// seed + (index+1)*golden.  Draw i depends only on (seed, i), never on call
// order, so a stream can be partitioned across threads or resumed at any
// offset and still produce identical values.
inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Top 53 bits -> double in [0, 1).
inline double rng_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double rng_unit_at(std::uint64_t seed, std::uint64_t index) {
  return rng_unit(rng_at(seed, index));
}

}  // namespace otto

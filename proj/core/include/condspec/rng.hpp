#pragma once

#include <cstdint>

namespace condspec {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over <random> engines because
// its output is a pure function of 64-bit integer arithmetic: environments
// regenerate bit-identically on any platform.
//
// Stream-splitting rule used by environment generation: edge {x, x+1}
// (1 <= x < n) draws from a fresh SplitMix64 stream whose seed is the x-th
// output of the stream seeded with the environment seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1): 53 mantissa bits, offset by half an
  // ulp so 0 and 1 are unreachable (inverse-CDF transforms stay finite).
  double next_u01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace condspec

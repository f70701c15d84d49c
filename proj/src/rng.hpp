#pragma once

#include <cstdint>
#include <random>

namespace symvec::detail {

// Distributions written out by hand so streams match across standard
// libraries.

// Open interval (0, 1) from the top 53 bits.
inline double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace symvec::detail

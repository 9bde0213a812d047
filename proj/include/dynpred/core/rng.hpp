#pragma once

#include <cstdint>
#include <random>

namespace dynpred {

using Rng = std::mt19937_64;

/// Uniform draw from [0, n) that only depends on the engine stream, not on
/// the standard library's distribution internals. Keeps generated files
/// byte-identical for a fixed seed.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

inline bool coin(Rng& rng) { return (rng() & 1u) != 0; }

}  // namespace dynpred

#pragma once

#include <cstdint>
#include <random>

namespace hardy {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for (run seed, stream id, batch index). Results depend only on
/// these indices, never on scheduling.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t batch) {
  return mix_seed(mix_seed(mix_seed(seed) ^ stream) ^ batch);
}

inline double uniform01(Rng& rng) {
  // 53-bit mantissa in [0, 1).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform in (0, 1]; safe for logs and negative powers.
inline double uniform_open0(Rng& rng) { return 1.0 - uniform01(rng); }

}  // namespace hardy

#pragma once

#include <cstdint>
#include <random>

#include "aroc/math.hpp"

namespace aroc {

using Engine = std::mt19937_64;

/// Stream tags keep unrelated random consumers on disjoint substreams of a
/// single master seed.
enum class Stream : std::uint32_t {
  split = 1,
  bootstrap = 2,
  scenario = 3,
  generic = 4,
};

/// Deterministic substream engine for (seed, stream, index, sub).
/// Every bootstrap replicate / simulation replication gets its own engine, so
/// results do not depend on the order in which work items are executed.
inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0,
                          std::uint32_t sub = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), sub};
  return Engine(seq);
}

/// splitmix64 finalizer, used to fold run parameters into derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed) { return mix64(seed); }

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t first, Rest... rest) {
  return mix_seed(mix64(seed ^ first), rest...);
}

/// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in the open interval (0,1); safe as a quantile argument.
inline double uniform_open(Engine& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_range(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Unbiased integer in [0,n) (Lemire's multiply-shift with rejection).
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  unsigned __int128 m = static_cast<unsigned __int128>(eng()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t t = (0 - n) % n;
    while (lo < t) {
      m = static_cast<unsigned __int128>(eng()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Standard normal draw by inverse-CDF sampling. One 64-bit word per draw,
/// reproducible across standard library implementations (unlike
/// std::normal_distribution, whose algorithm is implementation-defined).
inline double standard_normal(Engine& eng) {
  return normal_quantile(uniform_open(eng));
}

}  // namespace aroc

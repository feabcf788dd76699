#pragma once

#include <cstdint>
#include <random>

namespace evocut {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-stream generator derived from (base seed, stream index).
inline std::mt19937_64 make_stream(std::uint64_t base_seed, std::uint64_t stream_index) {
  std::uint64_t s = base_seed;
  splitmix64(s);
  s ^= 0x94d049bb133111ebULL * (stream_index + 1);
  return std::mt19937_64(splitmix64(s));
}

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double canonical_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace evocut

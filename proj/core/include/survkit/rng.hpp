#pragma once

#include <cstdint>
#include <random>

namespace survkit {

/// splitmix64 finalizer; good avalanche, used to decorrelate seed streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic RNG stream derived from (seed, stream). Bootstrap and
/// permutation replicates use stream = replicate index so that results do
/// not depend on evaluation order.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(stream + 0x51ed2701)));
}

} // namespace survkit

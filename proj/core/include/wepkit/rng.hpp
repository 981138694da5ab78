#pragma once

#include <cstdint>
#include <random>

namespace wep {

using Engine = std::mt19937_64;

//! SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

//! Seed for an independent stream derived from (seed, stream index). Every
//! replicate owns one stream, so results do not depend on how replicates are
//! distributed over workers.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(stream_seed(seed, stream));
}

//! Uniform on (0, 1] with 53 random bits; never returns 0.
inline double uniform_open_closed(Engine& eng) {
  return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

} // namespace wep

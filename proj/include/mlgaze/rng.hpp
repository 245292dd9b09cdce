// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef MLGAZE_RNG_HPP
#define MLGAZE_RNG_HPP

#include <cstdint>
#include <random>

namespace mlgaze {

using Rng = std::mt19937_64;

/// SplitMix64 mixing of (seed, stream) so that neighbouring seeds give
/// unrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

} // namespace mlgaze

#endif // MLGAZE_RNG_HPP

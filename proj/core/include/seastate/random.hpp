#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace seastate {

// Engine used everywhere a seeded generator is required. Distributions are
// implemented in-house (see below) so that streams are identical across
// standard library implementations.
using Rng = std::mt19937_64;

/// Mixes a master seed with a stream index into an independent seed
/// (splitmix64 finalizer). Used for per-record and per-pass streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by rejection sampling.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Fisher-Yates permutation of 0..n-1.
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

}  // namespace seastate

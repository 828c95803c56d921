#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

// Seeded randomness helpers. std::mt19937_64 output is pinned by the
// standard, but the std distributions and std::shuffle are not; every
// draw here goes through our own mappings so a seed reproduces the same
// stream on any platform.
namespace nlosbench::rng {

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), bound > 0. Masked rejection, no bias.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t mask = ~std::uint64_t{0};
  mask >>= __builtin_clzll(bound - 1 | 1);
  for (;;) {
    const std::uint64_t v = gen() & mask;
    if (v < bound) return v;
  }
}

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& values, std::mt19937_64& gen) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[below(gen, i)]);
  }
}

/// Shuffled permutation of 0..n-1.
inline std::vector<std::size_t> permutation(std::size_t n,
                                            std::mt19937_64& gen) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(perm, gen);
  return perm;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives the seed of a named sub-stream from one root seed, so a single
/// CLI --seed fans out to independent generators (simulation, folds, SMO).
inline std::uint64_t stream_seed(std::uint64_t root, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(root ^ h);
}

}  // namespace nlosbench::rng

#ifndef GRAPHLIM_RANDOM_HPP
#define GRAPHLIM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace graphlim {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent sub-seed for stream `stream` of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

/// Uniform double in [0,1) built from the top 53 bits.
constexpr double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform double in [0,1) that depends only on (seed, a, b); symmetric in a, b.
constexpr double pair_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  if (a > b) std::swap(a, b);
  return bits_to_unit(splitmix64(derive_seed(seed, a) ^ splitmix64(b)));
}

inline double uniform01(Rng& rng) { return bits_to_unit(rng()); }

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

/// Uniformly random k-subset of 0..n-1 in random order.
std::vector<int> sample_subset(Rng& rng, int n, int k);

}  // namespace graphlim

#endif  // GRAPHLIM_RANDOM_HPP

#ifndef CURVESET_RNG_HPP
#define CURVESET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace curveset {

// Stage tags for deriving independent streams from a single user seed.
namespace rng_stream {
inline constexpr std::uint64_t kBicriteriaSeeding = 1;
inline constexpr std::uint64_t kCoresetDraw = 2;
inline constexpr std::uint64_t kPoolSubsets = 3;
inline constexpr std::uint64_t kPoolPerturb = 4;
inline constexpr std::uint64_t kTrialBicriteria = 5;
inline constexpr std::uint64_t kPoolBicriteria = 1u << 16;  // +t per candidate
inline constexpr std::uint64_t kTrialBase = 1u << 20;       // +t per trial
}  // namespace rng_stream

/// splitmix64 finalizer; mixes a user seed with a stream tag so each
/// pipeline stage gets an independent, reproducible generator.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix_seed(seed, stream));
}

/// Uniform double in [0,1) with 53 random bits. Bit-reproducible, unlike
/// std::uniform_real_distribution whose algorithm is unspecified.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). Rejection-free modulo is fine here; the bias
/// for n << 2^64 is far below anything the tests can observe.
inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  return static_cast<std::size_t>(g() % n);
}

/// Standard normal via Box-Muller (two uniforms per call, no caching).
inline double gaussian(std::mt19937_64& g) {
  const double u1 = 1.0 - uniform01(g);  // (0,1], keeps log finite
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

/// One draw from the distribution proportional to `weights`.
/// Falls back to the last positive-weight index on rounding overruns.
inline std::size_t draw_weighted(std::mt19937_64& g,
                                 const std::vector<double>& weights,
                                 double total) {
  if (weights.empty() || total <= 0.0)
    throw std::invalid_argument("draw_weighted: no mass to draw from");
  const double r = uniform01(g) * total;
  double acc = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    acc += weights[i];
    if (r < acc) return i;
  }
  if (last_positive == weights.size())
    throw std::invalid_argument("draw_weighted: no positive weight");
  return last_positive;
}

}  // namespace curveset

#endif  // CURVESET_RNG_HPP

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace textlab {

using Rng = std::mt19937_64;

// Derives an independent engine from (master seed, stream id). Generators
// keep lengths, memory resets, and token draws on separate streams so that
// changing one knob (e.g. z) does not perturb the other draw sequences.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return Rng(seq);
}

// splitmix64-style mix for deriving per-cell seeds (replica grids,
// per-document substreams). Collision-free enough for seed derivation.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Uniform on [0,1) with 53-bit resolution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on the open interval (0,1); safe under log().
inline double uniform01_open(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n) by masked rejection; n >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const int bits = 64 - std::countl_zero(n - 1);
  while (true) {
    const std::uint64_t x = rng() >> (64 - bits);
    if (x < n) return x;
  }
}

// One standard normal draw (Box-Muller). Consumes exactly two engine values,
// so streams stay aligned regardless of how many draws callers interleave.
inline double normal01(Rng& rng) {
  const double u1 = uniform01_open(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace textlab

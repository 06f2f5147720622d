#ifndef BDLAB_RNG_HPP
#define BDLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace bdlab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Substream key for replica `index` of a run seeded with `seed`:
//
//   key = mix64(mix64(seed) + 0x9e3779b97f4a7c15 * (index + 1))
//
// The key seeds a std::mt19937_64 engine. Uniform and exponential variates are
// derived from the raw 64-bit engine output below (not std::*_distribution),
// so streams are bit-identical across standard library implementations.
constexpr std::uint64_t substream_key(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Base seed for one experiment stage (tag) at one grid point (index), so that
// stages and grid points never share replica streams.
constexpr std::uint64_t stage_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return mix64(seed + mix64((tag << 32) ^ index));
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t replica_index)
      : seed_(seed),
        replica_index_(replica_index),
        engine_(substream_key(seed, replica_index)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t replica_index() const { return replica_index_; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open_zero() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard exponential variate; may be exactly 0 when the uniform draw is 1.
  double standard_exponential() { return -std::log(uniform_open_zero()); }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t replica_index_;
  std::mt19937_64 engine_;
};

}  // namespace bdlab

#endif  // BDLAB_RNG_HPP

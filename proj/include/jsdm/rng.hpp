#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace jsdm {

/// SplitMix64 finalizer, used to turn (seed, index) pairs into well-mixed
/// engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of the independent substream `index` derived from `seed`:
/// splitmix64(seed XOR index).
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(seed ^ index);
}

/// Seeded generator: std::mt19937_64 with portable variate transforms.
///
/// The standard library distributions are implementation-defined, so every
/// variate here is derived from raw 64-bit engine output to keep streams
/// byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(stream_seed(seed, index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard exponential variate.
  double exponential();

  /// Uniform point on the (dim-1)-simplex via normalized exponentials.
  std::vector<double> simplex(std::size_t dim);

  /// Index i such that cdf[i-1] <= u < cdf[i] for a fresh uniform u.
  std::size_t categorical(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
};

}  // namespace jsdm

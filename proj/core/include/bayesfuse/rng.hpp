#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bayesfuse {

/// SplitMix64 finalizer. Bijective on 64-bit words, which is what makes the
/// seed-derivation scheme below collision-free.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from (seed, stream). For a fixed seed,
/// distinct streams map to distinct results: stream -> splitmix64(stream) is
/// a bijection, xor with a constant is a bijection, and the outer splitmix64
/// is a bijection, so the composition is injective in stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

/// Deterministic random source. std::mt19937_64 output is fully specified by
/// the standard, and all real-valued mappings are implemented here explicitly
/// rather than through std distributions, so identical seeds give identical
/// streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Unit-rate exponential variate; strictly positive except on the
  /// 2^-53-probability draw u == 0.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bayesfuse

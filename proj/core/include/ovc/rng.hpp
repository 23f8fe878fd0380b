#pragma once

#include <cmath>
#include <cstdint>

namespace ovc {

/// Deterministic 64-bit generator built on splitmix-style mixing.
///
/// The algorithm is fixed so that identical seeds reproduce identical
/// scenarios everywhere: the state advances by the golden-ratio increment
/// 0x9E3779B97F4A7C15 and each output is the finalizer
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
/// applied to the new state.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Independent stream derived from this seed and a stream id.
  Rng fork(uint64_t stream) const { return Rng(mix(state_ + 0x9E3779B97F4A7C15ULL * (stream + 1))); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n); n must be positive.
  uint64_t below(uint64_t n) { return next_u64() % n; }

  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

 private:
  uint64_t state_;
};

}  // namespace ovc

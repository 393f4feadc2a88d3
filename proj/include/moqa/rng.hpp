#ifndef MOQA_RNG_HPP
#define MOQA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace moqa {

/// Counter-based 64-bit PRNG (SplitMix64). The state advances by a fixed
/// odd constant and each output is a finalizer of the counter, so streams
/// are reproducible across platforms and trivially splittable.
///
/// Stream splitting convention used throughout: substream i of a root seed
/// is seeded with `seed ^ mix64(i)`, see derive_stream(). Parallel workers
/// therefore draw from disjoint, order-independent streams.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the paired draw is cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// SplitMix64 output finalizer as a standalone 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of substream `index` of a root `seed`: seed ^ mix64(index).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  return seed ^ mix64(index);
}

} // namespace moqa

#endif

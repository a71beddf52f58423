#pragma once

#include <cmath>
#include <cstdint>

namespace jordanis {

/// splitmix64. Small, seedable, and bit-for-bit reproducible across
/// platforms, which std:: distributions do not guarantee.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  /// Uniform integer in [0, bound).
  uint64_t next_below(uint64_t bound) { return next_u64() % bound; }

  /// Independent stream for a given index; results do not depend on how many
  /// draws were taken from this generator before the split.
  static Rng split(uint64_t seed, uint64_t index) {
    Rng mix(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
    mix.next_u64();
    return Rng(mix.next_u64());
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace jordanis

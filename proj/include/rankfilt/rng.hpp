#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rankfilt {

/// SplitMix64. Pinned so that noise realizations are reproducible bit-for-bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1): the top 53 bits of next() scaled by 2^-53.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) noexcept {
    const auto span = static_cast<double>(hi - lo + 1);
    const int offset = static_cast<int>(uniform() * span);
    return lo + (offset > hi - lo ? hi - lo : offset);
  }

  /// Standard normal deviate. Box-Muller on consecutive uniform pairs; the
  /// sine branch of each pair is served on the following call.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// First output of a SplitMix64 seeded with `value`; used to derive sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t value) noexcept { return SplitMix64(value).next(); }

}  // namespace rankfilt

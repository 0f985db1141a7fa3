#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rankfilt/error.hpp"
#include "rankfilt/image.hpp"
#include "rankfilt/rng.hpp"

namespace rankfilt {

enum class NoiseKind { salt_pepper, fixed_impulse, random_impulse, gaussian };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::salt_pepper;
  double density = 0.0;  // ignored for gaussian
  int low = 0;
  int high = 255;
  double sigma = 0.0;  // gaussian only
  std::uint64_t seed = 0;

  void validate() const {
    if (!(density >= 0.0 && density <= 1.0)) {
      throw Error(ErrorKind::invalid_spec, "density must lie in [0, 1]");
    }
    if (kind == NoiseKind::gaussian) {
      if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::invalid_spec, "sigma must be finite and >= 0");
      }
      return;
    }
    if (low < 0 || high > 255 || low >= high) {
      throw Error(ErrorKind::invalid_spec, "impulse levels need 0 <= low < high <= 255");
    }
  }
};

/// Ground-truth set of pixels the injector corrupted.
class NoiseMask {
 public:
  NoiseMask(int width, int height, bool fill = false)
      : width_(width), height_(height), flags_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 1 || height < 1) throw Error(ErrorKind::invalid_dimension, "mask must be at least 1x1");
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return flags_.size(); }

  bool operator[](std::size_t i) const { return flags_[i]; }
  void set(std::size_t i, bool value) { flags_[i] = value; }
  bool at(int x, int y) const { return flags_[static_cast<std::size_t>(y) * width_ + x]; }

  std::size_t count() const noexcept { return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), true)); }

  bool same_shape(const GrayImage& image) const noexcept {
    return width_ == image.width() && height_ == image.height();
  }

  /// 0/255 image, the on-disk form of a mask.
  GrayImage to_image() const {
    GrayImage out(width_, height_);
    auto px = out.pixels();
    for (std::size_t i = 0; i < flags_.size(); ++i) px[i] = flags_[i] ? 255 : 0;
    return out;
  }

  /// Any nonzero sample marks the pixel.
  static NoiseMask from_image(const GrayImage& image) {
    NoiseMask mask(image.width(), image.height());
    const auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) mask.flags_[i] = px[i] != 0;
    return mask;
  }

  friend bool operator==(const NoiseMask&, const NoiseMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<bool> flags_;
};

struct NoisyImage {
  GrayImage image;
  NoiseMask mask;
};

/// Corrupts `image` according to `spec`. Pixels are visited row-major; for the
/// impulse kinds one uniform draw per pixel decides selection (draw < density)
/// and a second draw picks the replacement level.
inline NoisyImage inject(const GrayImage& image, const NoiseSpec& spec) {
  spec.validate();
  SplitMix64 rng(spec.seed);
  GrayImage out = image;
  NoiseMask mask(image.width(), image.height());
  auto px = out.pixels();

  if (spec.kind == NoiseKind::gaussian) {
    for (std::size_t i = 0; i < px.size(); ++i) {
      const double shifted = std::round(static_cast<double>(px[i]) + spec.sigma * rng.normal());
      const auto value = static_cast<Intensity>(std::clamp(shifted, 0.0, 255.0));
      mask.set(i, value != px[i]);
      px[i] = value;
    }
    return {std::move(out), std::move(mask)};
  }

  for (std::size_t i = 0; i < px.size(); ++i) {
    if (!(rng.uniform() < spec.density)) continue;
    mask.set(i, true);
    if (spec.kind == NoiseKind::random_impulse) {
      px[i] = static_cast<Intensity>(rng.uniform_int(spec.low, spec.high));
    } else {
      px[i] = static_cast<Intensity>(rng.uniform() < 0.5 ? spec.low : spec.high);
    }
  }
  return {std::move(out), std::move(mask)};
}

}  // namespace rankfilt

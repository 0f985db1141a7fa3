#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankfilt/error.hpp"

namespace rankfilt {

using Intensity = std::uint8_t;

/// Single-channel 8-bit image stored row-major.
class GrayImage {
 public:
  GrayImage(int width, int height, Intensity fill = 0) : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  GrayImage(int width, int height, std::vector<Intensity> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorKind::shape, "pixel count " + std::to_string(pixels_.size()) +
                                        " does not match " + std::to_string(width) + "x" +
                                        std::to_string(height));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  Intensity at(int x, int y) const { return pixels_[index(x, y)]; }
  Intensity& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const Intensity> pixels() const noexcept { return pixels_; }
  std::span<Intensity> pixels() noexcept { return pixels_; }

  std::span<const Intensity> row(int y) const noexcept {
    return std::span<const Intensity>(pixels_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool contains(int x, int y) const noexcept { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  bool same_shape(const GrayImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  static void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorKind::invalid_dimension,
                  "image must be at least 1x1, got " + std::to_string(width) + "x" + std::to_string(height));
    }
  }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Intensity> pixels_;
};

inline GrayImage new_image(int width, int height, int fill) {
  if (fill < 0 || fill > 255) {
    throw Error(ErrorKind::invalid_spec, "fill " + std::to_string(fill) + " outside [0, 255]");
  }
  return GrayImage(width, height, static_cast<Intensity>(fill));
}

inline void require_same_shape(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::shape, std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                                      std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

enum class BorderPolicy {
  replicate,  // clamp to the nearest valid row/column
  reflect,    // mirror about the edge pixel: -1 -> 1, n -> n-2
};

/// Maps a possibly out-of-range coordinate onto [0, extent).
inline int resolve_coordinate(int coord, int extent, BorderPolicy policy) noexcept {
  if (coord >= 0 && coord < extent) return coord;
  if (policy == BorderPolicy::replicate || extent == 1) return std::clamp(coord, 0, extent - 1);
  // reflect-101 has period 2*(extent-1)
  const int period = 2 * (extent - 1);
  int c = coord % period;
  if (c < 0) c += period;
  return c < extent ? c : period - c;
}

inline void check_side(int side) {
  if (side < 3 || side % 2 == 0) {
    throw Error(ErrorKind::invalid_window, "window side must be odd and >= 3, got " + std::to_string(side));
  }
}

/// A side x side neighborhood, row-major, with the center sample at index side*side/2.
class Window {
 public:
  Window(int side, std::vector<Intensity> values) : side_(side), values_(std::move(values)) {
    check_side(side);
    if (values_.size() != static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
      throw Error(ErrorKind::shape, "window of side " + std::to_string(side) + " needs " +
                                        std::to_string(side * side) + " values");
    }
  }

  int side() const noexcept { return side_; }
  std::span<const Intensity> values() const noexcept { return values_; }
  Intensity center_value() const noexcept { return values_[values_.size() / 2]; }

 private:
  int side_;
  std::vector<Intensity> values_;
};

struct WindowStats {
  Intensity s_min = 0;
  Intensity s_med = 0;
  Intensity s_max = 0;

  friend bool operator==(const WindowStats&, const WindowStats&) = default;
};

inline Window window_at(const GrayImage& image, int x, int y, int side,
                        BorderPolicy policy = BorderPolicy::replicate) {
  check_side(side);
  if (!image.contains(x, y)) {
    throw Error(ErrorKind::out_of_bounds, "(" + std::to_string(x) + ", " + std::to_string(y) +
                                              ") outside " + std::to_string(image.width()) + "x" +
                                              std::to_string(image.height()));
  }
  const int radius = side / 2;
  std::vector<Intensity> values;
  values.reserve(static_cast<std::size_t>(side) * side);
  for (int dy = -radius; dy <= radius; ++dy) {
    const int yy = resolve_coordinate(y + dy, image.height(), policy);
    for (int dx = -radius; dx <= radius; ++dx) {
      values.push_back(image.at(resolve_coordinate(x + dx, image.width(), policy), yy));
    }
  }
  return Window(side, std::move(values));
}

inline WindowStats window_stats(const Window& window) {
  std::vector<Intensity> sorted(window.values().begin(), window.values().end());
  const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
  std::nth_element(sorted.begin(), mid, sorted.end());
  const auto [lo, hi] = std::minmax_element(sorted.begin(), sorted.end());
  return WindowStats{*lo, *mid, *hi};
}

}  // namespace rankfilt

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rankfilt/image.hpp"

namespace rankfilt {

/// 256-bin running histogram of a window's samples.
///
/// Min and max are kept as lazy bounds that only tighten on query. The median
/// is tracked Huang-style: a pivot bin plus the number of samples strictly
/// below it, nudged toward rank count/2 when asked for.
class WindowHistogram {
 public:
  void clear() noexcept {
    bins_.fill(0);
    count_ = 0;
    lo_ = 255;
    hi_ = 0;
    pivot_ = 0;
    below_ = 0;
  }

  void add(Intensity v) noexcept {
    ++bins_[v];
    ++count_;
    if (v < lo_) lo_ = v;
    if (v > hi_) hi_ = v;
    if (v < pivot_) ++below_;
  }

  void remove(Intensity v) noexcept {
    --bins_[v];
    --count_;
    if (v < pivot_) --below_;
  }

  int count() const noexcept { return count_; }

  Intensity min() const noexcept {
    while (bins_[lo_] == 0) ++lo_;
    return static_cast<Intensity>(lo_);
  }

  Intensity max() const noexcept {
    while (bins_[hi_] == 0) --hi_;
    return static_cast<Intensity>(hi_);
  }

  /// Middle element for odd counts, i.e. 0-based rank count/2.
  Intensity median() const noexcept {
    const int rank = count_ / 2;
    while (below_ > rank) {
      --pivot_;
      below_ -= static_cast<int>(bins_[pivot_]);
    }
    while (below_ + static_cast<int>(bins_[pivot_]) <= rank) {
      below_ += static_cast<int>(bins_[pivot_]);
      ++pivot_;
    }
    return static_cast<Intensity>(pivot_);
  }

  /// Element of 0-based `rank` in sorted order; rank must be < count().
  Intensity select(int rank) const noexcept {
    int v = min();
    int seen = static_cast<int>(bins_[v]);
    while (seen <= rank) seen += static_cast<int>(bins_[++v]);
    return static_cast<Intensity>(v);
  }

  WindowStats stats() const noexcept { return {min(), median(), max()}; }

 private:
  std::array<std::uint32_t, 256> bins_{};
  int count_ = 0;
  mutable int lo_ = 255;
  mutable int hi_ = 0;
  mutable int pivot_ = 0;
  mutable int below_ = 0;
};

/// Calls visit(x, y, const WindowHistogram&) for every pixel, row by row,
/// sliding the side x side window one column at a time.
template <class Visitor>
void for_each_window(const GrayImage& image, int side, BorderPolicy policy, Visitor&& visit) {
  check_side(side);
  const int radius = side / 2;
  const int width = image.width();
  const int height = image.height();

  std::vector<int> cols(static_cast<std::size_t>(width + 2 * radius));
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) {
    cols[i] = resolve_coordinate(i - radius, width, policy);
  }

  std::vector<const Intensity*> rows(static_cast<std::size_t>(side));
  WindowHistogram hist;
  for (int y = 0; y < height; ++y) {
    for (int dy = -radius; dy <= radius; ++dy) {
      rows[dy + radius] = image.row(resolve_coordinate(y + dy, height, policy)).data();
    }
    hist.clear();
    for (int i = 0; i < side; ++i) {
      for (const Intensity* r : rows) hist.add(r[cols[i]]);
    }
    visit(0, y, static_cast<const WindowHistogram&>(hist));
    for (int x = 1; x < width; ++x) {
      const int leaving = cols[x - 1];
      const int entering = cols[x - 1 + side];
      for (const Intensity* r : rows) {
        hist.remove(r[leaving]);
        hist.add(r[entering]);
      }
      visit(x, y, static_cast<const WindowHistogram&>(hist));
    }
  }
}

/// Per-pixel (S_min, S_med, S_max) for one window side.
class StatsGrid {
 public:
  StatsGrid(int width, int height, int side)
      : width_(width), height_(height), side_(side), cells_(static_cast<std::size_t>(width) * height) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int side() const noexcept { return side_; }

  const WindowStats& at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x]; }
  WindowStats& at(int x, int y) { return cells_[static_cast<std::size_t>(y) * width_ + x]; }

  friend bool operator==(const StatsGrid&, const StatsGrid&) = default;

 private:
  int width_;
  int height_;
  int side_;
  std::vector<WindowStats> cells_;
};

inline StatsGrid sliding_stats_pass(const GrayImage& image, int side,
                                    BorderPolicy policy = BorderPolicy::replicate) {
  check_side(side);
  StatsGrid grid(image.width(), image.height(), side);
  for_each_window(image, side, policy,
                  [&](int x, int y, const WindowHistogram& h) { grid.at(x, y) = h.stats(); });
  return grid;
}

}  // namespace rankfilt

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankfilt/error.hpp"
#include "rankfilt/image.hpp"
#include "rankfilt/sliding.hpp"

namespace rankfilt {

inline GrayImage median_filter(const GrayImage& image, int side, BorderPolicy policy = BorderPolicy::replicate) {
  check_side(side);
  GrayImage out(image.width(), image.height());
  for_each_window(image, side, policy,
                  [&](int x, int y, const WindowHistogram& h) { out.at(x, y) = h.median(); });
  return out;
}

inline void check_weights(std::span<const int> weights, int side) {
  check_side(side);
  if (weights.size() != static_cast<std::size_t>(side) * side) {
    throw Error(ErrorKind::shape, "expected " + std::to_string(side * side) + " weights, got " +
                                      std::to_string(weights.size()));
  }
  std::int64_t total = 0;
  for (int w : weights) {
    if (w < 1) throw Error(ErrorKind::invalid_weights, "weights must be positive integers");
    total += w;
  }
  if (total % 2 == 0) {
    throw Error(ErrorKind::invalid_weights, "total weight " + std::to_string(total) + " is even");
  }
}

/// Median of the multiset in which window sample k appears weights[k] times.
/// Weights are laid out row-major over the window.
inline GrayImage weighted_median_filter(const GrayImage& image, std::span<const int> weights, int side,
                                        BorderPolicy policy = BorderPolicy::replicate) {
  check_weights(weights, side);
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  const std::int64_t target = (total + 1) / 2;
  const int radius = side / 2;

  GrayImage out(image.width(), image.height());
  std::array<std::int64_t, 256> mass{};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      mass.fill(0);
      std::size_t k = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        const int yy = resolve_coordinate(y + dy, image.height(), policy);
        for (int dx = -radius; dx <= radius; ++dx) {
          mass[image.at(resolve_coordinate(x + dx, image.width(), policy), yy)] += weights[k++];
        }
      }
      std::int64_t cumulative = 0;
      int v = 0;
      while ((cumulative += mass[v]) < target) ++v;
      out.at(x, y) = static_cast<Intensity>(v);
    }
  }
  return out;
}

/// Center-weighted median. Adding center_weight-1 copies of the center Y to
/// an n-sample window gives median(v[K-m], Y, v[K+m]) with K = n/2,
/// m = (center_weight-1)/2 and ranks clamped to the window.
inline GrayImage cwm_filter(const GrayImage& image, int side, int center_weight,
                            BorderPolicy policy = BorderPolicy::replicate) {
  check_side(side);
  if (center_weight < 1 || center_weight % 2 == 0) {
    throw Error(ErrorKind::invalid_weights, "center weight must be a positive odd integer, got " +
                                                std::to_string(center_weight));
  }
  const int n = side * side;
  const int k = n / 2;
  const int m = (center_weight - 1) / 2;
  const int lo_rank = std::max(k - m, 0);
  const int hi_rank = std::min(k + m, n - 1);

  GrayImage out(image.width(), image.height());
  for_each_window(image, side, policy, [&](int x, int y, const WindowHistogram& h) {
    const Intensity center = image.at(x, y);
    out.at(x, y) = std::clamp(center, h.select(lo_rank), h.select(hi_rank));
  });
  return out;
}

enum class AmfFallback {
  median,  // replace the center with S_med of the largest window
  center,  // keep the center unchanged
};

/// Adaptive median filter. For each pixel the window grows from w_init in
/// steps of 2 until S_min < S_med < S_max holds or w_max is passed. With a
/// valid median the center is kept when S_min < Y < S_max and replaced by
/// S_med otherwise; an exhausted search resolves through `fallback`.
inline GrayImage amf_filter(const GrayImage& image, int w_init = 3, int w_max = 7,
                            BorderPolicy policy = BorderPolicy::replicate,
                            AmfFallback fallback = AmfFallback::median) {
  if (w_init < 3 || w_init % 2 == 0 || w_max % 2 == 0 || w_init > w_max) {
    throw Error(ErrorKind::invalid_spec, "AMF needs odd 3 <= w_init <= w_max, got " + std::to_string(w_init) +
                                             ", " + std::to_string(w_max));
  }
  std::vector<StatsGrid> grids;
  for (int side = w_init; side <= w_max; side += 2) grids.push_back(sliding_stats_pass(image, side, policy));

  GrayImage out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Intensity center = image.at(x, y);
      Intensity result = 0;
      bool resolved = false;
      for (const StatsGrid& grid : grids) {
        const WindowStats& s = grid.at(x, y);
        if (s.s_min < s.s_med && s.s_med < s.s_max) {
          result = (s.s_min < center && center < s.s_max) ? center : s.s_med;
          resolved = true;
          break;
        }
      }
      if (!resolved) result = fallback == AmfFallback::median ? grids.back().at(x, y).s_med : center;
      out.at(x, y) = result;
    }
  }
  return out;
}

enum class FilterKind { none, median, weighted_median, cwm, amf };

/// Which filter to run and with what parameters. `none` is the identity,
/// used as a baseline in sweeps.
struct FilterSpec {
  FilterKind kind = FilterKind::median;
  int side = 3;
  std::vector<int> weights;
  int center_weight = 3;
  int w_init = 3;
  int w_max = 7;
  AmfFallback fallback = AmfFallback::median;

  static FilterSpec identity() { return with_kind(FilterKind::none); }
  static FilterSpec median(int side = 3) {
    FilterSpec s = with_kind(FilterKind::median);
    s.side = side;
    return s;
  }
  static FilterSpec cwm(int center_weight, int side = 3) {
    FilterSpec s = with_kind(FilterKind::cwm);
    s.side = side;
    s.center_weight = center_weight;
    return s;
  }
  static FilterSpec amf(int w_max = 7, int w_init = 3, AmfFallback fallback = AmfFallback::median) {
    FilterSpec s = with_kind(FilterKind::amf);
    s.w_init = w_init;
    s.w_max = w_max;
    s.fallback = fallback;
    return s;
  }
  static FilterSpec weighted(std::vector<int> weights, int side) {
    FilterSpec s = with_kind(FilterKind::weighted_median);
    s.side = side;
    s.weights = std::move(weights);
    return s;
  }

  void validate() const {
    switch (kind) {
      case FilterKind::none:
        return;
      case FilterKind::median:
        check_side(side);
        return;
      case FilterKind::weighted_median:
        check_weights(weights, side);
        return;
      case FilterKind::cwm:
        check_side(side);
        if (center_weight < 1 || center_weight % 2 == 0) {
          throw Error(ErrorKind::invalid_weights, "center weight must be a positive odd integer");
        }
        return;
      case FilterKind::amf:
        if (w_init < 3 || w_init % 2 == 0 || w_max % 2 == 0 || w_init > w_max) {
          throw Error(ErrorKind::invalid_spec, "AMF needs odd 3 <= w_init <= w_max");
        }
        return;
    }
  }

  static FilterSpec with_kind(FilterKind k) {
    FilterSpec s;
    s.kind = k;
    return s;
  }

  /// Short label, e.g. "median:3", "cwm:3", "amf:7". Parsed back by parse_filter_label.
  std::string label() const {
    switch (kind) {
      case FilterKind::none: return "none";
      case FilterKind::median: return "median:" + std::to_string(side);
      case FilterKind::weighted_median: return "wm:" + std::to_string(side);
      case FilterKind::cwm:
        return side == 3 ? "cwm:" + std::to_string(center_weight)
                         : "cwm:" + std::to_string(center_weight) + ":" + std::to_string(side);
      case FilterKind::amf: return "amf:" + std::to_string(w_max);
    }
    return "?";
  }
};

inline GrayImage apply_filter(const GrayImage& image, const FilterSpec& spec,
                              BorderPolicy policy = BorderPolicy::replicate) {
  spec.validate();
  switch (spec.kind) {
    case FilterKind::none: return image;
    case FilterKind::median: return median_filter(image, spec.side, policy);
    case FilterKind::weighted_median: return weighted_median_filter(image, spec.weights, spec.side, policy);
    case FilterKind::cwm: return cwm_filter(image, spec.side, spec.center_weight, policy);
    case FilterKind::amf: return amf_filter(image, spec.w_init, spec.w_max, policy, spec.fallback);
  }
  return image;
}

namespace detail {
inline int parse_int_field(std::string_view text, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::invalid_spec, "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}
}  // namespace detail

/// Parses the shorthand "none", "median[:side]", "cwm[:weight[:side]]", "amf[:w_max]".
inline FilterSpec parse_filter_label(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  FilterSpec spec;
  if (name == "none") {
    spec = FilterSpec::identity();
    if (!rest.empty()) throw Error(ErrorKind::invalid_spec, "'none' takes no parameter");
  } else if (name == "median") {
    spec = FilterSpec::median(rest.empty() ? 3 : detail::parse_int_field(rest, "median side"));
  } else if (name == "cwm") {
    spec = FilterSpec::cwm(3);
    if (!rest.empty()) {
      const auto second = rest.find(':');
      spec.center_weight = detail::parse_int_field(rest.substr(0, second), "center weight");
      if (second != std::string_view::npos) spec.side = detail::parse_int_field(rest.substr(second + 1), "cwm side");
    }
  } else if (name == "amf") {
    spec = FilterSpec::amf(rest.empty() ? 7 : detail::parse_int_field(rest, "amf w_max"));
  } else {
    throw Error(ErrorKind::invalid_spec, "unknown filter '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

}  // namespace rankfilt

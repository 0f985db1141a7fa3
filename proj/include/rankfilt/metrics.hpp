#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "rankfilt/error.hpp"
#include "rankfilt/image.hpp"
#include "rankfilt/noise.hpp"

namespace rankfilt {

/// Mean squared error; the sum is accumulated exactly in integers.
inline double mse(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a, b);
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(pa.size());
}

/// PSNR in dB for 8-bit data. +infinity when the images are equal.
inline double psnr_from_mse(double mse_value) {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

inline double psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

/// Percentage of masked pixels whose absolute error against the original
/// strictly decreased from `noisy` to `denoised`. Empty when the mask is empty.
inline std::optional<double> pona(const GrayImage& original, const GrayImage& noisy, const GrayImage& denoised,
                                  const NoiseMask& mask) {
  require_same_shape(original, noisy);
  require_same_shape(original, denoised);
  if (!mask.same_shape(original)) throw Error(ErrorKind::shape, "mask does not match image dimensions");

  const auto po = original.pixels();
  const auto pn = noisy.pixels();
  const auto pd = denoised.pixels();
  std::size_t masked = 0;
  std::size_t improved = 0;
  for (std::size_t i = 0; i < po.size(); ++i) {
    if (!mask[i]) continue;
    ++masked;
    if (std::abs(pd[i] - po[i]) < std::abs(pn[i] - po[i])) ++improved;
  }
  if (masked == 0) return std::nullopt;
  return 100.0 * static_cast<double>(improved) / static_cast<double>(masked);
}

struct MetricsReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  std::optional<double> pona_pct;
  double runtime_ms = 0.0;
};

inline MetricsReport evaluate(const GrayImage& original, const GrayImage& noisy, const GrayImage& denoised,
                              const NoiseMask& mask, double runtime_ms = 0.0) {
  MetricsReport report;
  report.mse = mse(original, denoised);
  report.psnr_db = psnr_from_mse(report.mse);
  report.pona_pct = pona(original, noisy, denoised, mask);
  report.runtime_ms = runtime_ms;
  return report;
}

}  // namespace rankfilt

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rankfilt/error.hpp"
#include "rankfilt/filters.hpp"
#include "rankfilt/image.hpp"
#include "rankfilt/metrics.hpp"
#include "rankfilt/noise.hpp"
#include "rankfilt/pgm.hpp"
#include "rankfilt/rng.hpp"

namespace rankfilt {

/// Deterministic test image: a diagonal gradient plus seeded 8x8 blocky
/// texture, stretched to span the full [0, 255] range.
inline GrayImage synthetic_textured(int width, int height, std::uint64_t seed = 1) {
  constexpr int kBlock = 8;
  const int bw = (width + kBlock - 1) / kBlock;
  const int bh = (height + kBlock - 1) / kBlock;
  SplitMix64 rng(seed);
  std::vector<double> blocks(static_cast<std::size_t>(bw) * bh);
  for (double& b : blocks) b = rng.uniform() * 100.0;

  const double span = std::max(1, width + height - 2);
  std::vector<double> raw(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      raw[static_cast<std::size_t>(y) * width + x] =
          155.0 * (x + y) / span + blocks[static_cast<std::size_t>(y / kBlock) * bw + x / kBlock];
    }
  }
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double scale = *hi > *lo ? 255.0 / (*hi - *lo) : 0.0;
  GrayImage out(width, height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < raw.size(); ++i) px[i] = static_cast<Intensity>(std::lround((raw[i] - *lo) * scale));
  return out;
}

struct SweepConfig {
  GrayImage source{1, 1};
  std::vector<double> densities{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  NoiseKind noise_kind = NoiseKind::salt_pepper;
  std::vector<FilterSpec> filters{FilterSpec::cwm(3), FilterSpec::amf(7)};
  std::uint64_t seed = 0;
  int trials = 5;
  BorderPolicy policy = BorderPolicy::replicate;
  std::optional<std::filesystem::path> dump_dir;

  void validate() const {
    if (trials < 1) throw Error(ErrorKind::invalid_spec, "trials must be >= 1");
    for (std::size_t i = 0; i < densities.size(); ++i) {
      if (!(densities[i] > 0.0 && densities[i] <= 1.0)) {
        throw Error(ErrorKind::invalid_spec, "densities must lie in (0, 1]");
      }
      if (i > 0 && !(densities[i] > densities[i - 1])) {
        throw Error(ErrorKind::invalid_spec, "densities must be strictly increasing");
      }
    }
    for (const FilterSpec& f : filters) f.validate();
  }
};

struct SweepRow {
  double density = 0.0;
  std::string filter;
  int trial = 0;
  MetricsReport metrics;
};

struct SweepAggregate {
  double density = 0.0;
  std::string filter;
  MetricsReport mean;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<SweepAggregate> aggregates;

  const SweepAggregate* find(double density, const std::string& filter) const {
    for (const auto& a : aggregates) {
      if (a.density == density && a.filter == filter) return &a;
    }
    return nullptr;
  }
};

/// Seed of the (trial, density) cell; every filter in the cell sees the same noise.
inline std::uint64_t cell_seed(std::uint64_t seed, int trial, std::size_t density_index, std::size_t n_densities) {
  return splitmix64(seed ^ (static_cast<std::uint64_t>(trial) * n_densities + density_index));
}

namespace detail {
inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string dump_name(double density, const std::string& label, int trial) {
  std::string safe = label;
  std::replace(safe.begin(), safe.end(), ':', '-');
  return format_g6(density) + "_" + safe + "_" + std::to_string(trial) + ".pgm";
}

inline SweepAggregate aggregate(double density, const std::string& filter, const std::vector<SweepRow>& rows) {
  SweepAggregate agg{density, filter, {}};
  double pona_sum = 0.0;
  int pona_n = 0;
  for (const SweepRow& r : rows) {
    agg.mean.mse += r.metrics.mse;
    agg.mean.psnr_db += r.metrics.psnr_db;
    agg.mean.runtime_ms += r.metrics.runtime_ms;
    if (r.metrics.pona_pct) {
      pona_sum += *r.metrics.pona_pct;
      ++pona_n;
    }
  }
  const auto n = static_cast<double>(rows.size());
  agg.mean.mse /= n;
  agg.mean.psnr_db /= n;
  agg.mean.runtime_ms /= n;
  if (pona_n > 0) agg.mean.pona_pct = pona_sum / pona_n;
  return agg;
}
}  // namespace detail

/// Inject, denoise and measure for every (density, filter, trial) cell.
/// Rows come out ordered by density, then filter, then trial.
inline SweepReport run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t nd = config.densities.size();
  const std::size_t nf = config.filters.size();
  const auto nt = static_cast<std::size_t>(config.trials);

  SweepReport report;
  report.rows.resize(nd * nf * nt);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t t = 0; t < nt; ++t) {
      NoiseSpec noise{.kind = config.noise_kind,
                      .density = config.densities[d],
                      .seed = cell_seed(config.seed, static_cast<int>(t), d, nd)};
      const NoisyImage noisy = inject(config.source, noise);
      for (std::size_t f = 0; f < nf; ++f) {
        const FilterSpec& filter = config.filters[f];
        SweepRow& row = report.rows[(d * nf + f) * nt + t];
        row.density = config.densities[d];
        row.filter = filter.label();
        row.trial = static_cast<int>(t);
        try {
          const auto start = std::chrono::steady_clock::now();
          const GrayImage restored = apply_filter(noisy.image, filter, config.policy);
          const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
          row.metrics = evaluate(config.source, noisy.image, restored, noisy.mask, elapsed.count());
          if (config.dump_dir) {
            save_pgm(*config.dump_dir / detail::dump_name(row.density, row.filter, row.trial), restored);
          }
        } catch (const Error& e) {
          throw Error(e.kind(), std::string(e.what()) + " [density " + detail::format_g6(row.density) +
                                    ", filter " + row.filter + ", trial " + std::to_string(t) + "]");
        }
      }
    }
  }

  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t f = 0; f < nf; ++f) {
      const auto first = report.rows.begin() + static_cast<std::ptrdiff_t>((d * nf + f) * nt);
      const std::vector<SweepRow> cell(first, first + static_cast<std::ptrdiff_t>(nt));
      report.aggregates.push_back(detail::aggregate(config.densities[d], config.filters[f].label(), cell));
    }
  }
  return report;
}

inline constexpr const char* kSweepCsvHeader = "density,filter,trial,mse,psnr_db,pona_pct,runtime_ms";

/// CSV with one line per row followed by one "mean" line per (density, filter).
/// Reals use 6 significant digits; infinite PSNR is "inf", undefined PONA is empty.
inline std::string report_to_csv(const SweepReport& report) {
  const auto line = [](double density, const std::string& filter, const std::string& trial,
                       const MetricsReport& m) {
    std::string s = detail::format_g6(density) + "," + filter + "," + trial + "," + detail::format_g6(m.mse) + ",";
    s += std::isinf(m.psnr_db) ? "inf" : detail::format_g6(m.psnr_db);
    s += ",";
    if (m.pona_pct) s += detail::format_g6(*m.pona_pct);
    s += "," + detail::format_g6(m.runtime_ms) + "\n";
    return s;
  };

  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const SweepRow& r : report.rows) out += line(r.density, r.filter, std::to_string(r.trial), r.metrics);
  for (const SweepAggregate& a : report.aggregates) out += line(a.density, a.filter, "mean", a.mean);
  return out;
}

}  // namespace rankfilt

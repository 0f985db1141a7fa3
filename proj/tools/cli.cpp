#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rankfilt/rankfilt.hpp"

namespace rankfilt::cli {
namespace {

// Thrown for flag values that fail validation; maps to exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library validation failures are reported as usage errors.
template <class Fn>
auto validated(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

NoiseKind parse_noise_kind(const std::string& s) {
  if (s == "sp") return NoiseKind::salt_pepper;
  if (s == "fixed") return NoiseKind::fixed_impulse;
  if (s == "random") return NoiseKind::random_impulse;
  if (s == "gauss") return NoiseKind::gaussian;
  throw UsageError("unknown noise kind '" + s + "'");
}

BorderPolicy parse_border(const std::string& s) {
  if (s == "replicate") return BorderPolicy::replicate;
  if (s == "reflect") return BorderPolicy::reflect;
  throw UsageError("unknown border policy '" + s + "'");
}

std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const int w = std::stoi(s.substr(0, x), &used_w);
    const int h = std::stoi(s.substr(x + 1), &used_h);
    if (used_w != x || used_h != s.size() - x - 1 || w < 1 || h < 1) throw std::invalid_argument(s);
    return {w, h};
  } catch (const std::exception&) {
    throw UsageError("expected WxH, got '" + s + "'");
  }
}

std::string format_metric_line(const MetricsReport& m) {
  char buf[64];
  std::string line;
  std::snprintf(buf, sizeof buf, "%.6g", m.mse);
  line += buf;
  line += ",";
  if (std::isinf(m.psnr_db)) {
    line += "inf";
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", m.psnr_db);
    line += buf;
  }
  line += ",";
  if (m.pona_pct) {
    std::snprintf(buf, sizeof buf, "%.6g", *m.pona_pct);
    line += buf;
  }
  return line;
}

struct NoiseArgs {
  std::string kind = "sp";
  double density = 0.0;
  int low = 0;
  int high = 255;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;
  std::string mask;
  bool ascii = false;
};

struct DenoiseArgs {
  std::string filter = "median";
  int side = 3;
  int center_weight = 3;
  std::vector<int> weights;
  int w_init = 3;
  int w_max = 7;
  std::string fallback = "median";
  std::string border = "replicate";
  std::string in;
  std::string out;
  bool ascii = false;
};

struct MetricsArgs {
  std::string original;
  std::string noisy;
  std::string denoised;
  std::string mask;
};

struct SweepArgs {
  std::string image;
  std::string synthetic;
  std::vector<double> densities{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::vector<std::string> filters{"cwm:3", "amf:7"};
  std::string kind = "sp";
  std::string border = "replicate";
  int trials = 5;
  std::uint64_t seed = 0;
  std::string out;
  std::string dump_dir;
};

int do_noise(const NoiseArgs& a) {
  NoiseSpec spec{.kind = parse_noise_kind(a.kind),
                 .density = a.density,
                 .low = a.low,
                 .high = a.high,
                 .sigma = a.sigma,
                 .seed = a.seed};
  validated([&] { spec.validate(); });
  const GrayImage source = load_pgm(a.in);
  const NoisyImage noisy = inject(source, spec);
  const PgmVariant variant = a.ascii ? PgmVariant::ascii_p2 : PgmVariant::binary_p5;
  save_pgm(a.out, noisy.image, variant);
  if (!a.mask.empty()) save_pgm(a.mask, noisy.mask.to_image());
  return kExitOk;
}

FilterSpec denoise_spec(const DenoiseArgs& a) {
  FilterSpec spec;
  if (a.filter == "median") {
    spec = FilterSpec::median(a.side);
  } else if (a.filter == "wm") {
    spec = FilterSpec::weighted(a.weights, a.side);
  } else if (a.filter == "cwm") {
    spec = FilterSpec::cwm(a.center_weight, a.side);
  } else if (a.filter == "amf") {
    if (a.fallback != "median" && a.fallback != "center") throw UsageError("unknown fallback '" + a.fallback + "'");
    spec = FilterSpec::amf(a.w_max, a.w_init, a.fallback == "center" ? AmfFallback::center : AmfFallback::median);
  } else {
    throw UsageError("unknown filter '" + a.filter + "'");
  }
  spec.validate();
  return spec;
}

int do_denoise(const DenoiseArgs& a) {
  const FilterSpec spec = validated([&] { return denoise_spec(a); });
  const BorderPolicy policy = parse_border(a.border);
  const GrayImage source = load_pgm(a.in);
  save_pgm(a.out, apply_filter(source, spec, policy), a.ascii ? PgmVariant::ascii_p2 : PgmVariant::binary_p5);
  return kExitOk;
}

int do_metrics(const MetricsArgs& a, std::ostream& out) {
  const GrayImage original = load_pgm(a.original);
  const GrayImage noisy = load_pgm(a.noisy);
  const GrayImage denoised = load_pgm(a.denoised);
  require_same_shape(original, noisy);
  require_same_shape(original, denoised);

  std::optional<NoiseMask> mask;
  if (!a.mask.empty()) {
    mask = NoiseMask::from_image(load_pgm(a.mask));
  } else {
    // Without a stored mask, every pixel the noise touched counts as noisy.
    mask.emplace(original.width(), original.height());
    for (std::size_t i = 0; i < original.size(); ++i) mask->set(i, original.pixels()[i] != noisy.pixels()[i]);
  }
  out << format_metric_line(evaluate(original, noisy, denoised, *mask)) << "\n";
  return kExitOk;
}

int do_sweep(const SweepArgs& a) {
  SweepConfig config;
  config.densities = a.densities;
  config.noise_kind = parse_noise_kind(a.kind);
  config.policy = parse_border(a.border);
  config.trials = a.trials;
  config.seed = a.seed;
  config.filters.clear();
  for (const std::string& label : a.filters) {
    config.filters.push_back(validated([&] { return parse_filter_label(label); }));
  }
  if (!a.dump_dir.empty()) config.dump_dir = a.dump_dir;
  if (a.image.empty() == a.synthetic.empty()) throw UsageError("give exactly one of --image or --synthetic");
  std::optional<std::pair<int, int>> size;
  if (!a.synthetic.empty()) size = parse_size(a.synthetic);
  validated([&] { config.validate(); });

  config.source = size ? synthetic_textured(size->first, size->second) : load_pgm(a.image);
  if (config.dump_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*config.dump_dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create " + config.dump_dir->string());
  }
  const std::string csv = report_to_csv(run_sweep(config));
  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::io, "cannot write " + a.out);
  file << csv;
  if (!file) throw Error(ErrorKind::io, "write failed for " + a.out);
  return kExitOk;
}

bool is_io_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io:
    case ErrorKind::unsupported_format:
    case ErrorKind::unsupported_depth:
    case ErrorKind::corrupt_file:
    case ErrorKind::shape:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-order image filters: noise injection, denoising, metrics and sweeps", "rankfilt"};
  app.require_subcommand(1);

  NoiseArgs noise;
  auto* noise_cmd = app.add_subcommand("noise", "Inject seeded noise into a PGM image");
  noise_cmd->add_option("--kind", noise.kind, "sp|fixed|random|gauss")->check(CLI::IsMember({"sp", "fixed", "random", "gauss"}));
  noise_cmd->add_option("--density", noise.density, "Fraction of pixels corrupted");
  noise_cmd->add_option("--low", noise.low, "Low impulse level");
  noise_cmd->add_option("--high", noise.high, "High impulse level");
  noise_cmd->add_option("--sigma", noise.sigma, "Gaussian standard deviation");
  noise_cmd->add_option("--seed", noise.seed, "RNG seed");
  noise_cmd->add_option("--mask", noise.mask, "Write the corruption mask as a 0/255 PGM");
  noise_cmd->add_flag("--ascii", noise.ascii, "Write P2 instead of P5");
  noise_cmd->add_option("IN", noise.in)->required();
  noise_cmd->add_option("OUT", noise.out)->required();

  DenoiseArgs denoise;
  auto* denoise_cmd = app.add_subcommand("denoise", "Apply a rank filter to a PGM image");
  denoise_cmd->add_option("--filter", denoise.filter, "median|wm|cwm|amf")->check(CLI::IsMember({"median", "wm", "cwm", "amf"}));
  denoise_cmd->add_option("--side", denoise.side, "Window side (odd)");
  denoise_cmd->add_option("--center-weight", denoise.center_weight, "CWM center weight (odd)");
  denoise_cmd->add_option("--weights", denoise.weights, "Comma-separated WM weights, row-major")->delimiter(',');
  denoise_cmd->add_option("--winit", denoise.w_init, "AMF initial window");
  denoise_cmd->add_option("--wmax", denoise.w_max, "AMF maximum window");
  denoise_cmd->add_option("--fallback", denoise.fallback, "AMF exhausted-window rule: median|center")->check(CLI::IsMember({"median", "center"}));
  denoise_cmd->add_option("--border", denoise.border, "replicate|reflect")->check(CLI::IsMember({"replicate", "reflect"}));
  denoise_cmd->add_flag("--ascii", denoise.ascii, "Write P2 instead of P5");
  denoise_cmd->add_option("IN", denoise.in)->required();
  denoise_cmd->add_option("OUT", denoise.out)->required();

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Print mse,psnr_db,pona_pct for a restoration");
  metrics_cmd->add_option("--original", metrics.original)->required();
  metrics_cmd->add_option("--noisy", metrics.noisy)->required();
  metrics_cmd->add_option("--denoised", metrics.denoised)->required();
  metrics_cmd->add_option("--mask", metrics.mask, "0/255 mask PGM; defaults to pixels where noisy != original");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Noise-density sweep over several filters, written as CSV");
  sweep_cmd->add_option("--image", sweep.image, "Source PGM");
  sweep_cmd->add_option("--synthetic", sweep.synthetic, "Use a WxH synthetic textured image");
  sweep_cmd->add_option("--densities", sweep.densities)->delimiter(',');
  sweep_cmd->add_option("--filters", sweep.filters, "e.g. cwm:3,amf:7,median:3,none")->delimiter(',');
  sweep_cmd->add_option("--kind", sweep.kind, "sp|fixed|random")->check(CLI::IsMember({"sp", "fixed", "random"}));
  sweep_cmd->add_option("--border", sweep.border)->check(CLI::IsMember({"replicate", "reflect"}));
  sweep_cmd->add_option("--trials", sweep.trials);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--out", sweep.out, "CSV path")->required();
  sweep_cmd->add_option("--dump-images", sweep.dump_dir, "Directory for restored images");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*noise_cmd) return do_noise(noise);
    if (*denoise_cmd) return do_denoise(denoise);
    if (*metrics_cmd) return do_metrics(metrics, out);
    if (*sweep_cmd) return do_sweep(sweep);
  } catch (const UsageError& e) {
    err << "rankfilt: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "rankfilt: " << e.what() << "\n";
    return is_io_kind(e.kind()) ? kExitIo : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rankfilt::cli

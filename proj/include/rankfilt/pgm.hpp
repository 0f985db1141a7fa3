#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "rankfilt/error.hpp"
#include "rankfilt/image.hpp"

namespace rankfilt {

enum class PgmVariant { binary_p5, ascii_p2 };

namespace detail {

class PgmCursor {
 public:
  explicit PgmCursor(std::string_view bytes) : bytes_(bytes) {}

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

  // Skips whitespace and '#' comments (header only).
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  void skip_space() {
    while (pos_ < bytes_.size() && is_space(bytes_[pos_])) ++pos_;
  }

  // Returns -1 when no digits are present.
  long read_uint() {
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) return -1;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw Error(ErrorKind::corrupt_file, "header value too large");
      ++pos_;
    }
    return value;
  }

  long header_field(const char* name) {
    skip_space_and_comments();
    const long v = read_uint();
    if (v < 0) throw Error(ErrorKind::corrupt_file, std::string("missing or malformed ") + name);
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  char peek() const { return bytes_[pos_]; }
  std::string_view rest() const { return bytes_.substr(pos_); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Decodes a P2 (ASCII) or P5 (binary) graymap with maxval <= 255.
/// Samples are stored as-is; they are not rescaled to 255.
inline GrayImage read_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw Error(ErrorKind::unsupported_format, "expected P2 or P5 magic");
  }
  const bool binary = bytes[1] == '5';
  detail::PgmCursor cur(bytes);
  cur.advance(2);
  if (!cur.at_end() && !detail::PgmCursor::is_space(cur.peek()) && cur.peek() != '#') {
    throw Error(ErrorKind::unsupported_format, "malformed magic");
  }
  const long width = cur.header_field("width");
  const long height = cur.header_field("height");
  const long maxval = cur.header_field("maxval");
  if (width < 1 || height < 1) throw Error(ErrorKind::corrupt_file, "zero image dimension");
  if (maxval > 255) throw Error(ErrorKind::unsupported_depth, "maxval " + std::to_string(maxval) + " > 255");
  if (maxval < 1) throw Error(ErrorKind::corrupt_file, "maxval must be >= 1");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<Intensity> pixels;
  pixels.reserve(count);

  if (binary) {
    if (cur.at_end() || !detail::PgmCursor::is_space(cur.peek())) {
      throw Error(ErrorKind::corrupt_file, "missing whitespace after maxval");
    }
    cur.advance(1);
    const std::string_view raster = cur.rest();
    if (raster.size() < count) throw Error(ErrorKind::corrupt_file, "truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      const auto v = static_cast<unsigned char>(raster[i]);
      if (v > maxval) throw Error(ErrorKind::corrupt_file, "sample exceeds maxval");
      pixels.push_back(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      cur.skip_space();
      const long v = cur.read_uint();
      if (v < 0) throw Error(ErrorKind::corrupt_file, "truncated or malformed raster");
      if (v > maxval) throw Error(ErrorKind::corrupt_file, "sample exceeds maxval");
      pixels.push_back(static_cast<Intensity>(v));
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

/// Canonical encoding: no comments, maxval 255, P2 emits one image row per line.
inline std::string write_pgm(const GrayImage& image, PgmVariant variant = PgmVariant::binary_p5) {
  std::string out = variant == PgmVariant::binary_p5 ? "P5\n" : "P2\n";
  out += std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  if (variant == PgmVariant::binary_p5) {
    const auto px = image.pixels();
    out.append(reinterpret_cast<const char*>(px.data()), px.size());
    return out;
  }
  for (int y = 0; y < image.height(); ++y) {
    const auto row = image.row(y);
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x) out += ' ';
      out += std::to_string(row[x]);
    }
    out += '\n';
  }
  return out;
}

inline GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

inline void save_pgm(const std::filesystem::path& path, const GrayImage& image,
                     PgmVariant variant = PgmVariant::binary_p5) {
  const std::string bytes = write_pgm(image, variant);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace rankfilt

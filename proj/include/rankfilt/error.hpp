#pragma once

#include <stdexcept>
#include <string>

namespace rankfilt {

enum class ErrorKind {
  invalid_dimension,
  invalid_window,
  out_of_bounds,
  shape,
  invalid_weights,
  invalid_spec,
  unsupported_format,
  unsupported_depth,
  corrupt_file,
  io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_window: return "invalid-window";
    case ErrorKind::out_of_bounds: return "out-of-bounds";
    case ErrorKind::shape: return "shape";
    case ErrorKind::invalid_weights: return "invalid-weights";
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::unsupported_format: return "unsupported-format";
    case ErrorKind::unsupported_depth: return "unsupported-depth";
    case ErrorKind::corrupt_file: return "corrupt-file";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rankfilt

#pragma once

#include <stdexcept>
#include <string>

namespace fresco {

enum class ErrorKind {
  Io,
  Configuration,
  Structural,          // mesh not watertight / not closed after capping
  Orientation,         // inverted boundary orientation
  MultipleComponents,  // raster projection splits into several components
  DegenerateContour,
  Coverage,            // a sampling ray missed the surface
  NoPlaneFound,
  DegenerateFragment,
  DegenerateChain,
  DegenerateEscarpment,
  InsufficientSampling,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Orientation: return "orientation";
    case ErrorKind::MultipleComponents: return "multiple-components";
    case ErrorKind::DegenerateContour: return "degenerate-contour";
    case ErrorKind::Coverage: return "coverage";
    case ErrorKind::NoPlaneFound: return "no-plane-found";
    case ErrorKind::DegenerateFragment: return "degenerate-fragment";
    case ErrorKind::DegenerateChain: return "degenerate-chain";
    case ErrorKind::DegenerateEscarpment: return "degenerate-escarpment";
    case ErrorKind::InsufficientSampling: return "insufficient-sampling";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace fresco

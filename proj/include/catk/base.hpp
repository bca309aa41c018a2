#pragma once

#include <stdexcept>
#include <string>

namespace catk {

enum class ErrorKind {
  DegenerateTriangle,
  SizeBound,
  LengthMismatch,
  SlotReuse,
  InvalidTriangle,
  InvalidIndex,
  BoundaryEdge,
  NotAdmissible,
  ZeroSector,
  Disconnected,
  BoundaryMismatch,
  NotSingular,
  RadiusTooLarge,
  CycleInTree,
  OverlappingRegions,
  MalformedWings,
  InvalidParams,
  ParseError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::SizeBound: return "SizeBound";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SlotReuse: return "SlotReuse";
    case ErrorKind::InvalidTriangle: return "InvalidTriangle";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::BoundaryEdge: return "BoundaryEdge";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::ZeroSector: return "ZeroSector";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotSingular: return "NotSingular";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::CycleInTree: return "CycleInTree";
    case ErrorKind::OverlappingRegions: return "OverlappingRegions";
    case ErrorKind::MalformedWings: return "MalformedWings";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

// Geometric predicate tolerance: data closer than this (relative to the local
// length scale) to a degenerate configuration is clamped instead of rejected.
inline constexpr double eps_geom = 1e-9;

// Tolerance for quantities preserved exactly by construction (boundary lengths
// across surgery, nesting of dyadic refinements), where only rounding noise is
// acceptable.
inline constexpr double eps_exact = 1e-12;

// Allowed relative spread of radial distances when extracting a cone region.
inline constexpr double tol_radial = 0.05;

}  // namespace catk

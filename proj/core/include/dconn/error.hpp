#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dconn {

/// Failure categories raised by the library. Every public operation reports
/// contract violations by throwing dconn::Error carrying one of these codes.
enum class Errc {
  GroupMismatch,
  DimensionMismatch,
  CutLocus,
  NotVertical,
  BasepointMismatch,
  OutOfDomain,
  ShapeMismatch,
  LengthMismatch,
  DegenerateFit,
  SolverDiverged,
  DegenerateLagrangian,
  NotAFacet,
  BoundaryFace,
  BoundaryHinge,
  NotAdjacent,
  NotClosed,
  InvalidComplex,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace dconn

#include "dconn/error.hpp"

namespace dconn {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::CutLocus: return "CutLocus";
    case Errc::NotVertical: return "NotVertical";
    case Errc::BasepointMismatch: return "BasepointMismatch";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DegenerateFit: return "DegenerateFit";
    case Errc::SolverDiverged: return "SolverDiverged";
    case Errc::DegenerateLagrangian: return "DegenerateLagrangian";
    case Errc::NotAFacet: return "NotAFacet";
    case Errc::BoundaryFace: return "BoundaryFace";
    case Errc::BoundaryHinge: return "BoundaryHinge";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::NotClosed: return "NotClosed";
    case Errc::InvalidComplex: return "InvalidComplex";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dconn

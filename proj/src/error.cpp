#include "pgap/error.hpp"

namespace pgap {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::AsymmetricMatrix: return "AsymmetricMatrix";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonpositiveExponent: return "NonpositiveExponent";
    case Errc::NonpositiveScale: return "NonpositiveScale";
    case Errc::SinglePoint: return "SinglePoint";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::InvalidGraph: return "InvalidGraph";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::NotNegativeType: return "NotNegativeType";
    case Errc::NotStrict: return "NotStrict";
    case Errc::TooManyPoints: return "TooManyPoints";
    case Errc::NotInF0: return "NotInF0";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotUltrametric: return "NotUltrametric";
    case Errc::BridgeTooShort: return "BridgeTooShort";
    case Errc::LabelCollision: return "LabelCollision";
    case Errc::ComponentNotStrict: return "ComponentNotStrict";
    case Errc::BoundaryOrWorse: return "BoundaryOrWorse";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::vector<std::size_t> indices)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      indices_(std::move(indices)) {}

}  // namespace pgap

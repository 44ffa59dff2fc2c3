#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgap {

enum class Errc {
  AsymmetricMatrix,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TriangleViolation,
  DimensionMismatch,
  NonpositiveExponent,
  NonpositiveScale,
  SinglePoint,
  DisconnectedGraph,
  InvalidGraph,
  NotSymmetric,
  NoConvergence,
  NotNegativeType,
  NotStrict,
  TooManyPoints,
  NotInF0,
  TooFewPoints,
  InvalidArgument,
  NegativeEntry,
  NotUltrametric,
  BridgeTooShort,
  LabelCollision,
  ComponentNotStrict,
  BoundaryOrWorse,
  ParseError,
};

const char* to_string(Errc code);

// All library failures surface as this exception. `indices` names the
// offending matrix positions (or the line number for ParseError) when the
// failure is tied to specific entries.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {});

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace pgap

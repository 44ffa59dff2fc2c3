#pragma once

#include <span>

#include "pgap/matrix.hpp"

namespace pgap {

// Relative tolerance behind every sign decision on eigenvalues and inner
// products: zero_tol = kZeroRelTol * max(1, ||A||_2).
inline constexpr double kZeroRelTol = 1e-9;

struct Spectrum {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // column i pairs with eigenvalues[i]; orthonormal
  double zero_tol = 0.0;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  double spectral_norm() const;
  Vector eigenvector(std::size_t i) const;
};

/// Full symmetric eigendecomposition (Eigen's self-adjoint solver on the upper
/// triangle). Deterministic for identical input bits. Throws NotSymmetric when
/// the relative asymmetry exceeds 1e-12 and NoConvergence if the solver fails.
Spectrum sym_eigen(const Matrix& a);

struct SolveResult {
  Vector solution;
  double residual_norm = 0.0;
  bool singular = false;
};

// Least-residual (minimum-norm) solution of A b = rhs through the spectrum.
// Eigenvalues with |lambda| <= zero_tol are treated as zero, in which case
// `singular` is set.
SolveResult solve_sym(const Matrix& a, std::span<const double> rhs);
SolveResult solve_sym(const Matrix& a, const Spectrum& spectrum, std::span<const double> rhs);

// A^{-1} from the spectrum. Throws InvalidArgument if any eigenvalue is
// within zero_tol of 0.
Matrix inverse_from_spectrum(const Spectrum& spectrum);

// Gaussian elimination with partial pivoting for general square systems.
// Returns false when a pivot falls below `pivot_tol` times the largest entry.
bool solve_general(Matrix a, Vector& rhs, double pivot_tol = 1e-14);

}  // namespace pgap

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pgap/matrix.hpp"
#include "pgap/metric.hpp"
#include "pgap/spectral.hpp"

namespace pgap {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class NegTypeClass { NotNegativeType, NegativeTypeNonStrict, StrictNegativeType };

const char* to_string(NegTypeClass c);

/// Spectral and solvability evidence for (strict) p-negative type.
///
/// For n >= 2 the space is classified strict when the second-largest
/// eigenvalue of D_p is below -zero_tol, the largest is above zero_tol, and
/// the solution b of D_p b = 1 has (b|1) > kZeroRelTol * ||b||_1. It is of
/// negative type when the second-largest eigenvalue is at most zero_tol and a
/// solution with (b|1) >= 0 exists. A single point is strict with M_p = 0 and
/// u_p = (1).
struct NegTypeCertificate {
  NegTypeClass classification = NegTypeClass::NotNegativeType;
  double lambda_second = 0.0;  // second-largest eigenvalue (0 for one point)
  double lambda_top = 0.0;     // largest eigenvalue
  Spectrum spectrum;
  std::optional<Vector> b;
  double b_dot_one = 0.0;
  double m_p = kInfinity;       // sup of (D_p x|x) over sum(x) = 1
  std::optional<Vector> u_p;    // sum(u_p) = 1, D_p u_p = M_p 1
  std::optional<Vector> witness;  // sum(x) = 0 with (D_p x|x) > 0
  bool boundary_warning = false;

  bool strict() const noexcept { return classification == NegTypeClass::StrictNegativeType; }
  bool negative_type() const noexcept { return classification != NegTypeClass::NotNegativeType; }
};

NegTypeCertificate certify(const PDistanceMatrix& dp);

// M_p, or kInfinity when the space is not of negative type or (b|1) = 0.
double m_constant(const PDistanceMatrix& dp);

struct HatMatrix {
  Matrix values;
};

/// (D^-1 1)(D^-1 1)^T / (D^-1 1|1) - D^-1. Throws NotStrict unless certify()
/// says strict. A single point yields the 1x1 zero matrix.
HatMatrix hat_matrix(const PDistanceMatrix& dp);
HatMatrix hat_matrix(const PDistanceMatrix& dp, const NegTypeCertificate& cert);

enum class GapMethod { SignEnumeration, DefinitionZero, SinglePoint };

const char* to_string(GapMethod m);

struct GapResult {
  double gamma = 0.0;  // kInfinity for a single point
  double beta = 0.0;   // max over sign vectors of (hat z|z)
  std::vector<int> z_star;
  GapMethod method = GapMethod::SignEnumeration;
};

struct GapOptions {
  std::size_t cap = 24;
  // 0 picks NEGTYPE_THREADS from the environment, then the hardware count.
  unsigned threads = 0;
};

unsigned resolve_thread_count(unsigned requested);

/// Maximizes (hat z|z) over z in {-1,1}^n with z_0 = +1 and returns
/// gamma = 2 / beta. The 2^(n-1) sign vectors are split into a fixed number of
/// Gray-code chunks (a function of n only) and reduced in chunk order, so
/// the result does not depend on the thread count. Near-ties resolve to the
/// lexicographically smallest z.
GapResult gap_from_hat(const Matrix& hat, const GapOptions& options = {});

/// Exact gap: sign enumeration for strict spaces, 0 for negative type that is
/// not strict, kInfinity for a single point. Throws NotNegativeType or
/// TooManyPoints.
GapResult gap_exact(const PDistanceMatrix& dp, const GapOptions& options = {});

/// Evaluates the defining inequality
///   (gamma/2) ||x||_1^2 + (D_p x|x) <= 1e-12 ||x||_1^2 max(1, gamma)
/// for one x with sum(x) = 0. Throws NotInF0 otherwise.
bool gap_definition_check(const PDistanceMatrix& dp, double gamma, std::span<const double> x);

struct OracleResult {
  double gamma = 0.0;
  Vector minimizer;  // in F_0 with ||x||_1 = 1
};

/// Independent estimate of the gap: multi-start projected descent on
/// (-D_p x|x) / ||x||_1^2 over sum(x) = 0, each start polished by solving the
/// equality-constrained quadratic program for its sign pattern. Returns an
/// upper bound on the true gap (every evaluated point is feasible). Throws
/// NotStrict.
OracleResult gap_numeric_oracle(const PDistanceMatrix& dp, int restarts, std::uint64_t seed);

}  // namespace pgap

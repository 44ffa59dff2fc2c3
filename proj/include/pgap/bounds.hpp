#pragma once

#include <cstddef>
#include <string>

#include "pgap/matrix.hpp"
#include "pgap/metric.hpp"

namespace pgap {

// Gap of the n-point discrete space: (1/floor(n/2) + 1/ceil(n/2)) / 2,
// i.e. 2/n for even n and 2/(n - 1/n) for odd n. Independent of p.
double gamma_gap(std::size_t n);

// The other "gamma" of the exponent-enlargement formula: 1 - gamma_gap(n).
double gamma_xi(std::size_t n);

// gamma_gap under the name used by callers that think of it as Gamma(X_n, p).
inline double gamma_discrete(std::size_t n) { return gamma_gap(n); }

// Mean off-diagonal p-distance times gamma_gap(n).
double upper_bound_mean(const FiniteMetricSpace& x, double p);

struct DiameterBound {
  double value = 0.0;   // diameter^p * gamma_gap(n)
  bool tight = false;   // every off-diagonal distance equals the diameter
};

DiameterBound upper_bound_diameter(const FiniteMetricSpace& x, double p);

struct GapBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_source;
  std::string upper_source;
  double row_sum_factor = 0.0;     // lambda_n / (n M_p), at most 1
  bool constant_row_sum = false;   // row sums of D_p agree to 1e-9 relative
};

/// Spectral sandwich for a strict space with n >= 2:
///   (lambda_n / (n M_p)) |lambda_{n-1}| gamma_gap(n) <= Gamma <= |lambda_{n-1}|.
/// Throws NotStrict.
GapBounds spectral_bounds(const PDistanceMatrix& dp);

enum class XiExponent {
  Product,  // Delta^p * gamma_xi(n)
  Power,    // Delta^(p * gamma_xi(n))
};

struct XiResult {
  double xi = 0.0;          // kInfinity when the distance ratio is 1
  double gamma_xi_n = 0.0;
  double gamma = 0.0;
  double diameter = 0.0;
  double ratio = 1.0;
  std::size_t n = 0;
  XiExponent reading = XiExponent::Product;
};

/// Width of the exponent window [p, p + xi) on which strict negative type
/// persists: xi = ln(1 + gamma / denom) / ln(ratio), with denom chosen by
/// `reading`. Needs n >= 3 and gamma >= 0; gamma = 0 gives xi = 0.
XiResult xi_enlargement(const FiniteMetricSpace& x, double p, double gamma,
                        XiExponent reading = XiExponent::Product);

struct AveragingIdentity {
  double lhs = 0.0;  // enumerated mean of (B x|x)
  double rhs = 0.0;  // closed form
  std::size_t vectors = 0;
};

/// Averages (B x|x) over the balanced sign sets (n = 2m: m entries +1 and m
/// entries -1; n = 2m+1: m+1 entries +1 and m entries -1-1/m) and compares
/// with -n * mean or -((m+1) n / m) * mean of the off-diagonal entries.
/// Enumerates directly; guarded at n <= 20.
AveragingIdentity averaging_identity(const Matrix& b);

}  // namespace pgap

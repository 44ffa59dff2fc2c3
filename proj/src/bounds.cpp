#include "pgap/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"
#include "pgap/negtype.hpp"

namespace pgap {
namespace {

void require_two_points(std::size_t n) {
  if (n < 2) throw Error(Errc::TooFewPoints, "needs at least two points");
}

}  // namespace

double gamma_gap(std::size_t n) {
  require_two_points(n);
  const double lo = static_cast<double>(n / 2);
  const double hi = static_cast<double>((n + 1) / 2);
  return 0.5 * (1.0 / lo + 1.0 / hi);
}

double gamma_xi(std::size_t n) { return 1.0 - gamma_gap(n); }

double upper_bound_mean(const FiniteMetricSpace& x, double p) {
  const std::size_t n = x.size();
  require_two_points(n);
  const PDistanceMatrix dp = p_distance_matrix(x, p);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) total += dp.entries(i, j);
  return total / static_cast<double>(n * (n - 1)) * gamma_gap(n);
}

DiameterBound upper_bound_diameter(const FiniteMetricSpace& x, double p) {
  require_two_points(x.size());
  if (!(p > 0.0)) throw Error(Errc::NonpositiveExponent, "exponent must be positive");
  const double delta = diameter(x);
  return {std::pow(delta, p) * gamma_gap(x.size()), is_discrete(x)};
}

GapBounds spectral_bounds(const PDistanceMatrix& dp) {
  const std::size_t n = dp.size();
  require_two_points(n);
  const NegTypeCertificate cert = certify(dp);
  if (!cert.strict()) throw Error(Errc::NotStrict, "spectral bounds need strict negative type");

  GapBounds out;
  const double gap_n = gamma_gap(n);
  out.row_sum_factor = cert.lambda_top / (static_cast<double>(n) * cert.m_p);
  out.upper = std::abs(cert.lambda_second);
  out.lower = out.row_sum_factor * out.upper * gap_n;
  out.lower_source = "spectral lower: lambda_n/(n M_p) |lambda_{n-1}| Gamma(X_n)";
  out.upper_source = "spectral upper: |lambda_{n-1}|";

  double lo = kInfinity, hi = -kInfinity;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = sum(dp.entries.row(i));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.constant_row_sum = hi - lo <= 1e-9 * hi;
  return out;
}

XiResult xi_enlargement(const FiniteMetricSpace& x, double p, double gamma, XiExponent reading) {
  const std::size_t n = x.size();
  if (n < 3) throw Error(Errc::TooFewPoints, "exponent enlargement needs at least three points");
  if (!(p > 0.0)) throw Error(Errc::NonpositiveExponent, "exponent must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error(Errc::InvalidArgument, "gap must be finite and nonnegative");

  const SpaceStats stats = space_stats(x);
  XiResult out;
  out.n = n;
  out.gamma = gamma;
  out.diameter = stats.diameter;
  out.ratio = stats.ratio;
  out.reading = reading;
  out.gamma_xi_n = gamma_xi(n);

  const double denom = reading == XiExponent::Product ? std::pow(stats.diameter, p) * out.gamma_xi_n
                                                      : std::pow(stats.diameter, p * out.gamma_xi_n);
  const double numer = std::log1p(gamma / denom);
  if (stats.ratio == 1.0) {
    out.xi = gamma == 0.0 ? 0.0 : kInfinity;
  } else {
    out.xi = numer / std::log(stats.ratio);
  }
  return out;
}

AveragingIdentity averaging_identity(const Matrix& b) {
  const std::size_t n = b.rows();
  if (!b.square()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  require_two_points(n);
  if (n > 20) throw Error(Errc::TooManyPoints, "averaging identity enumerates; n <= 20", {n, 20});
  for (std::size_t i = 0; i < n; ++i)
    if (b(i, i) != 0.0) throw Error(Errc::NonzeroDiagonal, "diagonal must vanish", {i});

  const std::size_t m = n / 2;
  const bool even = n % 2 == 0;
  const std::size_t plus_count = even ? m : m + 1;
  const double minus_value = even ? -1.0 : -1.0 - 1.0 / static_cast<double>(m);

  const auto& k = kernels::active();
  AveragingIdentity out;
  Vector x(n);
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != plus_count) continue;
    for (std::size_t i = 0; i < n; ++i) x[i] = ((mask >> i) & 1u) ? 1.0 : minus_value;
    total += k.quad_form(b.data(), n, x.data());
    ++out.vectors;
  }
  out.lhs = total / static_cast<double>(out.vectors);

  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off += b(i, j);
  const double mean = off / static_cast<double>(n * (n - 1));
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  out.rhs = even ? -nd * mean : -((md + 1.0) * nd / md) * mean;
  return out;
}

}  // namespace pgap

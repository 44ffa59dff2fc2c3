#include "pgap/glue.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"
#include "pgap/spectral.hpp"

namespace pgap {
namespace {

double margin_tolerance(double bridge_p) { return kZeroRelTol * std::max(1.0, 2.0 * bridge_p); }

NegTypeCertificate strict_certificate(const PDistanceMatrix& dp, const char* side) {
  NegTypeCertificate cert = certify(dp);
  if (!cert.strict()) throw Error(Errc::ComponentNotStrict, std::string(side) + " component is not strictly of negative type");
  return cert;
}

double positive_margin(double bridge_p, double m_left, double m_right) {
  const double margin = 2.0 * bridge_p - m_left - m_right;
  if (!(margin > margin_tolerance(bridge_p)))
    throw Error(Errc::BoundaryOrWorse, "2c^p does not exceed M_p(left) + M_p(right)");
  return margin;
}

// Inverse when the right side is a single point (bordered system).
Matrix bordered_inverse(const Matrix& left_inv, double bridge_p) {
  const std::size_t n = left_inv.rows();
  const Vector x = multiply(left_inv, ones(n));
  const double s = sum(x);
  Matrix out(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = left_inv(i, j) - x[i] * x[j] / s;
    out(i, n) = out(n, i) = x[i] / (bridge_p * s);
  }
  out(n, n) = -1.0 / (bridge_p * bridge_p * s);
  return out;
}

Matrix block_inverse(const Matrix& inv1, const Matrix& inv2, double bridge_p) {
  const std::size_t n = inv1.rows();
  const std::size_t m = inv2.rows();
  const Vector x1 = multiply(inv1, ones(n));
  const Vector x2 = multiply(inv2, ones(m));
  const double s1 = sum(x1);
  const double s2 = sum(x2);
  const double c2 = bridge_p * bridge_p;
  const double den = 1.0 - c2 * s1 * s2;
  const double alpha = c2 * s2 / den;
  const double beta = -bridge_p / den;
  const double gamma = c2 * s1 / den;

  Matrix out(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = inv1(i, j) + alpha * x1[i] * x1[j];
    for (std::size_t j = 0; j < m; ++j) out(i, n + j) = out(n + j, i) = beta * x1[i] * x2[j];
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = inv2(i, j) + gamma * x2[i] * x2[j];
  return out;
}

}  // namespace

const char* to_string(GlueClass c) {
  switch (c) {
    case GlueClass::Strict: return "Strict";
    case GlueClass::NonStrictBoundary: return "NonStrictBoundary";
    case GlueClass::NotNegativeType: return "NotNegativeType";
  }
  return "Unknown";
}

FiniteMetricSpace glue_spaces(const GlueSpec& spec) {
  const double widest = std::max(diameter(spec.left), diameter(spec.right));
  if (!(spec.c > 0.0) || 2.0 * spec.c < widest)
    throw Error(Errc::BridgeTooShort, "bridge distance must satisfy 2c >= max diameter");
  std::set<std::string> seen(spec.left.labels().begin(), spec.left.labels().end());
  for (const auto& l : spec.right.labels())
    if (seen.count(l)) throw Error(Errc::LabelCollision, "label '" + l + "' appears on both sides");

  const std::size_t n = spec.left.size();
  const std::size_t m = spec.right.size();
  Matrix d(n + m, n + m, spec.c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = spec.left.distance(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d(n + i, n + j) = spec.right.distance(i, j);
  std::vector<std::string> labels = spec.left.labels();
  labels.insert(labels.end(), spec.right.labels().begin(), spec.right.labels().end());
  return validate_metric(std::move(labels), std::move(d));
}

GlueCondition glue_type_condition(const GlueSpec& spec, double p) {
  const NegTypeCertificate left = strict_certificate(p_distance_matrix(spec.left, p), "left");
  const NegTypeCertificate right = strict_certificate(p_distance_matrix(spec.right, p), "right");
  const double bridge_p = std::pow(spec.c, p);
  GlueCondition out;
  out.m_left = left.m_p;
  out.m_right = right.m_p;
  out.margin = 2.0 * bridge_p - left.m_p - right.m_p;
  const double tol = margin_tolerance(bridge_p);
  if (out.margin > tol) {
    out.classification = GlueClass::Strict;
  } else if (out.margin >= -tol) {
    out.classification = GlueClass::NonStrictBoundary;
  } else {
    out.classification = GlueClass::NotNegativeType;
  }
  return out;
}

Matrix glued_inverse(const PDistanceMatrix& left, const PDistanceMatrix& right, double c, double p) {
  const NegTypeCertificate cl = strict_certificate(left, "left");
  const NegTypeCertificate cr = strict_certificate(right, "right");
  const double bridge_p = std::pow(c, p);
  positive_margin(bridge_p, cl.m_p, cr.m_p);

  const std::size_t n = left.size();
  const std::size_t m = right.size();
  if (n == 1 && m == 1) return Matrix{{0.0, 1.0 / bridge_p}, {1.0 / bridge_p, 0.0}};
  if (m == 1) return bordered_inverse(inverse_from_spectrum(cl.spectrum), bridge_p);
  if (n == 1) {
    // Solve with the single point last, then move it to the front.
    const Matrix swapped = bordered_inverse(inverse_from_spectrum(cr.spectrum), bridge_p);
    Matrix out(m + 1, m + 1);
    auto from = [m](std::size_t i) { return i == 0 ? m : i - 1; };
    for (std::size_t i = 0; i <= m; ++i)
      for (std::size_t j = 0; j <= m; ++j) out(i, j) = swapped(from(i), from(j));
    return out;
  }
  return block_inverse(inverse_from_spectrum(cl.spectrum), inverse_from_spectrum(cr.spectrum), bridge_p);
}

HatFormTerms glued_hat_form(const GlueSpec& spec, double p, std::span<const double> z) {
  const std::size_t n = spec.left.size();
  const std::size_t m = spec.right.size();
  if (z.size() != n + m) throw Error(Errc::DimensionMismatch, "z must cover both components");

  const PDistanceMatrix dl = p_distance_matrix(spec.left, p);
  const PDistanceMatrix dr = p_distance_matrix(spec.right, p);
  const NegTypeCertificate cl = strict_certificate(dl, "left");
  const NegTypeCertificate cr = strict_certificate(dr, "right");
  const double bridge_p = std::pow(spec.c, p);
  const double margin = positive_margin(bridge_p, cl.m_p, cr.m_p);

  const PDistanceMatrix glued = p_distance_matrix(glue_spaces(spec), p);
  const NegTypeCertificate cg = certify(glued);
  if (!cg.strict()) throw Error(Errc::BoundaryOrWorse, "glued space is not numerically strict");
  const auto& k = kernels::active();

  HatFormTerms out;
  const Matrix hat = hat_matrix(glued, cg).values;
  out.direct = k.quad_form(hat.data(), n + m, z.data());

  const std::span<const double> x = z.subspan(0, n);
  const std::span<const double> y = z.subspan(n, m);
  const Matrix hl = hat_matrix(dl, cl).values;
  const Matrix hr = hat_matrix(dr, cr).values;
  out.left_term = k.quad_form(hl.data(), n, x.data());
  out.right_term = k.quad_form(hr.data(), m, y.data());
  const double diff = dot(*cl.u_p, x) - dot(*cr.u_p, y);
  out.cross_term = diff * diff / margin;
  return out;
}

GlueGapBounds glue_gap_bounds(const GlueSpec& spec, double p, double gamma_left, double gamma_right) {
  if (!(gamma_left > 0.0) || !(gamma_right > 0.0))
    throw Error(Errc::InvalidArgument, "component gaps must be positive");
  const NegTypeCertificate cl = strict_certificate(p_distance_matrix(spec.left, p), "left");
  const NegTypeCertificate cr = strict_certificate(p_distance_matrix(spec.right, p), "right");
  const double bridge_p = std::pow(spec.c, p);
  const double margin = positive_margin(bridge_p, cl.m_p, cr.m_p);

  GlueGapBounds out;
  const double spread = norm1(*cl.u_p) + norm1(*cr.u_p);
  out.alpha = 0.5 * spread * spread / margin;
  const double recip = (std::isinf(gamma_left) ? 0.0 : 1.0 / gamma_left) +
                       (std::isinf(gamma_right) ? 0.0 : 1.0 / gamma_right);
  out.upper = recip > 0.0 ? 1.0 / recip : kInfinity;
  out.lower = 1.0 / (recip + out.alpha);
  out.out_of_hypothesis = spec.left.size() == 1 && spec.right.size() == 1;
  return out;
}

HatParts singleton_hat_parts() { return {Matrix(1, 1), Vector{1.0}, 0.0}; }

HatParts glue_hat_parts(const HatParts& left, const HatParts& right, double bridge_p) {
  const double margin = 2.0 * bridge_p - left.m - right.m;
  // Relative only: at large p the bridge term can be far below 1.
  if (!(margin > kZeroRelTol * 2.0 * bridge_p))
    throw Error(Errc::BoundaryOrWorse, "2c^p does not exceed M_p(left) + M_p(right)");
  const std::size_t n = left.u.size();
  const std::size_t m = right.u.size();

  HatParts out;
  out.hat = Matrix(n + m, n + m);
  Vector v(n + m);
  for (std::size_t i = 0; i < n; ++i) v[i] = left.u[i];
  for (std::size_t i = 0; i < m; ++i) v[n + i] = -right.u[i];
  for (std::size_t i = 0; i < n + m; ++i)
    for (std::size_t j = 0; j < n + m; ++j) out.hat(i, j) = v[i] * v[j] / margin;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.hat(i, j) += left.hat(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.hat(n + i, n + j) += right.hat(i, j);

  const double t = (bridge_p - right.m) / margin;
  out.u.resize(n + m);
  for (std::size_t i = 0; i < n; ++i) out.u[i] = t * left.u[i];
  for (std::size_t i = 0; i < m; ++i) out.u[n + i] = (1.0 - t) * right.u[i];
  out.m = t * left.m + (1.0 - t) * bridge_p;
  return out;
}

}  // namespace pgap

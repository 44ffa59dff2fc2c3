#pragma once

#include <span>

#include "pgap/matrix.hpp"
#include "pgap/metric.hpp"
#include "pgap/negtype.hpp"

namespace pgap {

// Two spaces joined with every cross distance equal to `c`.
struct GlueSpec {
  FiniteMetricSpace left;
  FiniteMetricSpace right;
  double c = 0.0;
};

/// Throws BridgeTooShort when 2c < max(diam(left), diam(right)) and
/// LabelCollision when the label sets overlap. Left points come first.
FiniteMetricSpace glue_spaces(const GlueSpec& spec);

enum class GlueClass { Strict, NonStrictBoundary, NotNegativeType };

const char* to_string(GlueClass c);

struct GlueCondition {
  GlueClass classification = GlueClass::NotNegativeType;
  double margin = 0.0;  // 2 c^p - M_p(left) - M_p(right)
  double m_left = 0.0;
  double m_right = 0.0;
};

/// Classifies the glued space from the component constants alone. The margin
/// counts as zero within kZeroRelTol * max(1, 2 c^p). Throws
/// ComponentNotStrict unless both components are strict.
GlueCondition glue_type_condition(const GlueSpec& spec, double p);

/// Inverse of the glued p-distance matrix assembled from the component
/// inverses: rank-one corrections of each diagonal block plus an outer
/// product off the diagonal when both sides have two or more points, the
/// bordered form when one side is a single point. Throws BoundaryOrWorse when
/// the margin is not positive.
Matrix glued_inverse(const PDistanceMatrix& left, const PDistanceMatrix& right, double c, double p);

struct HatFormTerms {
  double direct = 0.0;      // (hat(glued) z|z)
  double left_term = 0.0;   // (hat(left) x|x)
  double right_term = 0.0;  // (hat(right) y|y)
  double cross_term = 0.0;  // ((u_left|x) - (u_right|y))^2 / margin
  double decomposed() const { return left_term + right_term + cross_term; }
};

/// Evaluates the hat form of the glued space at z = (x, y) both directly and
/// through the component decomposition. Throws BoundaryOrWorse.
HatFormTerms glued_hat_form(const GlueSpec& spec, double p, std::span<const double> z);

struct GlueGapBounds {
  double lower = 0.0;
  double upper = 0.0;   // kInfinity when both components are single points
  double alpha = 0.0;   // (||u_left||_1 + ||u_right||_1)^2 / (2 margin)
  bool out_of_hypothesis = false;
};

/// 1 / (1/g1 + 1/g2 + alpha) <= Gamma(glued) <= 1 / (1/g1 + 1/g2), where an
/// infinite gap (single point) contributes a zero reciprocal.
GlueGapBounds glue_gap_bounds(const GlueSpec& spec, double p, double gamma_left, double gamma_right);

// Hat matrix, u_p and M_p of one space, the data the glue recursion carries.
struct HatParts {
  Matrix hat;
  Vector u;
  double m = 0.0;
};

HatParts singleton_hat_parts();

/// Hat data of the glued space from the component hat data and c^p:
///   hat = diag(hat_l, hat_r) + v v^T / margin, v = (u_l, -u_r),
///   u   = (t u_l, (1 - t) u_r) with t = (c^p - M_r) / margin,
///   M   = t M_l + (1 - t) c^p.
/// Every term is a sum of like-signed quantities, so this stays accurate when
/// the two scales differ by many orders of magnitude.
HatParts glue_hat_parts(const HatParts& left, const HatParts& right, double bridge_p);

}  // namespace pgap

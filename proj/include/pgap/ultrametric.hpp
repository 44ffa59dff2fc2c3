#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgap/glue.hpp"
#include "pgap/matrix.hpp"
#include "pgap/metric.hpp"
#include "pgap/negtype.hpp"

namespace pgap {

// Nonnegative symmetric A with a_ij >= min(a_ik, a_kj) for all i, j, k and
// a_ii > max_{j != i} a_ij. Exact comparisons. Throws NotSymmetric or
// NegativeEntry.
bool strictly_ultrametric_check(const Matrix& a);

enum class LeafPolicy {
  DiscreteBlocks,  // stop at subsets whose distances all coincide
  Singletons,      // split all the way down
};

struct UltrametricNode {
  std::vector<std::size_t> points;  // ascending indices into the space
  double split_distance = 0.0;      // diameter of `points`; 0 for a singleton
  std::optional<std::size_t> left;  // side holding the smallest index
  std::optional<std::size_t> right; // every point here is at the diameter from every left point

  bool leaf() const noexcept { return !left.has_value(); }
};

struct UltrametricTree {
  std::vector<UltrametricNode> nodes;  // nodes[0] is the root

  const UltrametricNode& root() const { return nodes.front(); }

  // `(split=D left right)` for splits, `[a b c @ d]` for leaves.
  std::string serialize(const FiniteMetricSpace& x) const;
};

/// Repeatedly splits each subset at its diameter. Points closer than the
/// diameter form classes. If some but not all classes are single points, those
/// points form one side; otherwise the class of the first point does. The side
/// holding the smallest index becomes the left child. Throws NotUltrametric.
UltrametricTree decompose(const FiniteMetricSpace& x, LeafPolicy policy = LeafPolicy::DiscreteBlocks);

struct SplitTerm {
  std::size_t node = 0;
  double diameter_p = 0.0;    // Delta^p at this node
  double denominator = 0.0;   // 2 Delta^p - sum_k (|X_k| - 1)/|X_k| Delta(X_k)^p
  double alpha = 0.0;         // 2 / denominator
  double alpha_coarse = 0.0;  // |X| / Delta^p, which dominates alpha
};

/// Bounds on 1/Gamma(X, p) accumulated over the decomposition tree. Exact
/// leaf values (0 for singletons, 1/(delta^p gamma_gap(k)) for discrete
/// blocks) enter both sides; each split adds its alpha to the upper side.
/// `upper_reciprocal_coarse` uses |X|/Delta^p instead of alpha.
struct RecursiveGapBounds {
  double lower_reciprocal = 0.0;
  double upper_reciprocal = 0.0;
  double upper_reciprocal_coarse = 0.0;
  std::vector<SplitTerm> terms;

  double gamma_lower() const { return 1.0 / upper_reciprocal; }
  double gamma_upper() const { return lower_reciprocal > 0.0 ? 1.0 / lower_reciprocal : kInfinity; }
};

RecursiveGapBounds recursive_gap_bounds(const FiniteMetricSpace& x, double p,
                                        LeafPolicy policy = LeafPolicy::DiscreteBlocks);

struct CoterieSet {
  double alpha = 0.0;  // minimum nonzero distance
  std::vector<std::vector<std::size_t>> coteries;
  std::size_t count() const noexcept { return coteries.size(); }
};

// Distinct closed alpha-balls with at least two points, ordered by their
// smallest member.
CoterieSet coteries(const FiniteMetricSpace& x);

// lim_{p -> inf} Gamma(X, p) / alpha^p = 1 / sum_i 1/gamma_gap(|B_i|).
double asymptotic_gap_limit(const FiniteMetricSpace& x);

struct UltrametricMpReport {
  bool inverse_entries_positive = false;  // D_p^{-1} 1 > 0 entrywise
  bool mp_bound_satisfied = false;        // M_p <= ((n-1)/n) Delta^p
  double m_p = 0.0;
  double mp_bound = 0.0;
  Vector inverse_row_sums;
};

UltrametricMpReport mp_ultrametric_properties(const FiniteMetricSpace& x, double p);

/// Hat matrix, u_p and M_p of an ultrametric space built bottom-up through
/// the glue recursion instead of inverting D_p. Indices follow the input
/// order. Needs no certification: finite ultrametrics are strict for all p.
HatParts ultrametric_hat_parts(const FiniteMetricSpace& x, double p);

// Exact gap of an ultrametric space from ultrametric_hat_parts.
GapResult ultrametric_gap(const FiniteMetricSpace& x, double p, const GapOptions& options = {});

}  // namespace pgap

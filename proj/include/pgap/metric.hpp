#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pgap/matrix.hpp"

namespace pgap {

// Relative slack for triangle and strong-triangle checks, scaled by the
// diameter so parsed decimals do not trip on round-off.
inline constexpr double kMetricRelTol = 1e-9;

/// A validated finite metric space. Instances only come out of
/// validate_metric() and the constructions below, so the distance matrix is
/// always symmetric, zero on the diagonal, positive elsewhere, and satisfies
/// the triangle inequality up to kMetricRelTol * diameter.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  double distance(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& distances() const noexcept { return dist_; }

  // Sub-space on the given indices (input order preserved).
  FiniteMetricSpace subspace(const std::vector<std::size_t>& index) const;

  bool operator==(const FiniteMetricSpace&) const = default;

 private:
  friend FiniteMetricSpace validate_metric(std::vector<std::string>, Matrix);
  FiniteMetricSpace(std::vector<std::string> labels, Matrix dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {}

  std::vector<std::string> labels_;
  Matrix dist_;
};

/// Throws Error with AsymmetricMatrix / NonzeroDiagonal /
/// NonpositiveOffDiagonal / TriangleViolation naming the offending indices.
/// TriangleViolation carries (i, j, k) with d(i,j) > d(i,k) + d(k,j).
FiniteMetricSpace validate_metric(std::vector<std::string> labels, Matrix raw);

// Labels default to "0", "1", ...
FiniteMetricSpace validate_metric(Matrix raw);

std::vector<std::string> default_labels(std::size_t n);

struct PDistanceMatrix {
  double p = 1.0;
  Matrix entries;              // d(x_i, x_j)^p
  FiniteMetricSpace source;

  std::size_t size() const noexcept { return entries.rows(); }
};

PDistanceMatrix p_distance_matrix(const FiniteMetricSpace& x, double p);

// Every off-diagonal distance equals `scale`.
FiniteMetricSpace discrete_space(std::size_t n, double scale = 1.0);

FiniteMetricSpace scale_space(const FiniteMetricSpace& x, double alpha);

bool is_ultrametric(const FiniteMetricSpace& x);

// True when all off-diagonal distances coincide (a scaled X_n). Single points
// count as discrete.
bool is_discrete(const FiniteMetricSpace& x);

struct SpaceStats {
  double diameter = 0.0;
  double min_positive = 0.0;
  double ratio = 1.0;  // diameter / min_positive
};

SpaceStats space_stats(const FiniteMetricSpace& x);

// Largest distance; 0 for a single point.
double diameter(const FiniteMetricSpace& x);

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

struct WeightedGraph {
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> edges;

  // Looks up or appends a vertex by label.
  std::size_t vertex(const std::string& label);
  void add_edge(const std::string& u, const std::string& v, double weight);
  bool connected() const;
};

/// Minimax-path (bottleneck) distances: d(u,v) is the least possible
/// maximum edge weight along a walk from u to v. Computed on a minimum
/// spanning tree, whose unique u-v path realizes the minimax value.
FiniteMetricSpace ultrametric_from_graph(const WeightedGraph& g);

}  // namespace pgap

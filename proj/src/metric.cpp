#include "pgap/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pgap/error.hpp"

namespace pgap {
namespace {

std::string pair_text(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

double max_entry(const Matrix& m) {
  double out = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out = std::max(out, m(i, j));
  return out;
}

// Disjoint-set forest for Kruskal.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

FiniteMetricSpace validate_metric(std::vector<std::string> labels, Matrix raw) {
  const std::size_t n = raw.rows();
  if (!raw.square()) throw Error(Errc::DimensionMismatch, "distance matrix is not square");
  if (labels.size() != n) throw Error(Errc::DimensionMismatch, "label count does not match matrix order");
  if (n == 0) throw Error(Errc::DimensionMismatch, "empty metric space");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(raw(i, j)))
        throw Error(Errc::NonpositiveOffDiagonal, "non-finite distance at " + pair_text(i, j), {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (raw(i, j) != raw(j, i))
        throw Error(Errc::AsymmetricMatrix, "d" + pair_text(i, j) + " != d" + pair_text(j, i), {i, j});
  for (std::size_t i = 0; i < n; ++i)
    if (raw(i, i) != 0.0) throw Error(Errc::NonzeroDiagonal, "d(" + std::to_string(i) + ", " + std::to_string(i) + ") != 0", {i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(raw(i, j) > 0.0))
        throw Error(Errc::NonpositiveOffDiagonal, "d" + pair_text(i, j) + " <= 0", {i, j});

  const double slack = kMetricRelTol * max_entry(raw);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (raw(i, j) > raw(i, k) + raw(k, j) + slack) {
          std::ostringstream os;
          os << "d(" << i << ", " << j << ") > d(" << i << ", " << k << ") + d(" << k << ", " << j << ")";
          throw Error(Errc::TriangleViolation, os.str(), {i, j, k});
        }
      }

  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::LabelCollision, "duplicate point label");

  return FiniteMetricSpace(std::move(labels), std::move(raw));
}

FiniteMetricSpace validate_metric(Matrix raw) {
  auto labels = default_labels(raw.rows());
  return validate_metric(std::move(labels), std::move(raw));
}

FiniteMetricSpace FiniteMetricSpace::subspace(const std::vector<std::size_t>& index) const {
  std::vector<std::string> labels;
  labels.reserve(index.size());
  for (std::size_t i : index) labels.push_back(labels_.at(i));
  return FiniteMetricSpace(std::move(labels), submatrix(dist_, index));
}

PDistanceMatrix p_distance_matrix(const FiniteMetricSpace& x, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(Errc::NonpositiveExponent, "exponent must be positive");
  const std::size_t n = x.size();
  Matrix entries(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      entries(i, j) = i == j ? 0.0 : (p == 1.0 ? x.distance(i, j) : std::pow(x.distance(i, j), p));
  return {p, std::move(entries), x};
}

FiniteMetricSpace discrete_space(std::size_t n, double scale) {
  if (n == 0) throw Error(Errc::TooFewPoints, "discrete space needs at least one point");
  if (!(scale > 0.0)) throw Error(Errc::NonpositiveScale, "discrete space scale must be positive");
  Matrix d(n, n, scale);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  return validate_metric(std::move(d));
}

FiniteMetricSpace scale_space(const FiniteMetricSpace& x, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(Errc::NonpositiveScale, "scale must be positive");
  Matrix d = x.distances();
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) *= alpha;
  return validate_metric(x.labels(), std::move(d));
}

bool is_ultrametric(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  const double slack = kMetricRelTol * diameter(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (x.distance(i, j) > std::max(x.distance(i, k), x.distance(k, j)) + slack) return false;
      }
  return true;
}

bool is_discrete(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  if (n <= 2) return true;
  const double first = x.distance(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (x.distance(i, j) != first) return false;
  return true;
}

double diameter(const FiniteMetricSpace& x) { return max_entry(x.distances()); }

SpaceStats space_stats(const FiniteMetricSpace& x) {
  if (x.size() < 2) throw Error(Errc::SinglePoint, "statistics need at least two points");
  SpaceStats s;
  s.diameter = diameter(x);
  s.min_positive = s.diameter;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) s.min_positive = std::min(s.min_positive, x.distance(i, j));
  s.ratio = s.diameter / s.min_positive;
  return s;
}

std::size_t WeightedGraph::vertex(const std::string& label) {
  auto it = std::find(vertices.begin(), vertices.end(), label);
  if (it != vertices.end()) return static_cast<std::size_t>(it - vertices.begin());
  vertices.push_back(label);
  return vertices.size() - 1;
}

void WeightedGraph::add_edge(const std::string& u, const std::string& v, double weight) {
  if (u == v) throw Error(Errc::InvalidGraph, "self-loop on vertex " + u);
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw Error(Errc::InvalidGraph, "edge " + u + "-" + v + " needs a positive weight");
  const std::size_t a = vertex(u);
  const std::size_t b = vertex(v);
  edges.push_back({a, b, weight});
}

bool WeightedGraph::connected() const {
  if (vertices.empty()) return false;
  UnionFind uf(vertices.size());
  std::size_t components = vertices.size();
  for (const auto& e : edges)
    if (uf.unite(e.u, e.v)) --components;
  return components == 1;
}

FiniteMetricSpace ultrametric_from_graph(const WeightedGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n == 0) throw Error(Errc::InvalidGraph, "graph has no vertices");
  for (const auto& e : g.edges) {
    if (e.u >= n || e.v >= n) throw Error(Errc::InvalidGraph, "edge references an unknown vertex");
    if (e.u == e.v) throw Error(Errc::InvalidGraph, "self-loop", {e.u});
    if (!(e.weight > 0.0)) throw Error(Errc::InvalidGraph, "non-positive edge weight", {e.u, e.v});
  }

  std::vector<WeightedEdge> order = g.edges;
  std::stable_sort(order.begin(), order.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight < b.weight; });
  UnionFind uf(n);
  std::vector<std::vector<std::pair<std::size_t, double>>> tree(n);
  std::size_t joined = 0;
  for (const auto& e : order) {
    if (!uf.unite(e.u, e.v)) continue;
    tree[e.u].emplace_back(e.v, e.weight);
    tree[e.v].emplace_back(e.u, e.weight);
    ++joined;
  }
  if (joined + 1 != n) throw Error(Errc::DisconnectedGraph, "graph is not connected");

  // From every source, walk the tree carrying the running max edge weight.
  Matrix d(n, n);
  std::vector<std::size_t> stack;
  std::vector<bool> seen(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(seen.begin(), seen.end(), false);
    seen[s] = true;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : tree[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        d(s, v) = std::max(d(s, u), w);
        stack.push_back(v);
      }
    }
  }
  return validate_metric(g.vertices, std::move(d));
}

}  // namespace pgap

#pragma once

// Reference computations for tests. None of these call into the library's
// numerical kernels, so agreement with them is evidence rather than an echo.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgap/error.hpp"
#include "pgap/matrix.hpp"
#include "pgap/metric.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const pgap::Matrix& a) {
  Dense out(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

// Gauss-Jordan with full pivoting on a copy.
inline Dense inverse(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline double quad(const Dense& a, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) s += a[i][j] * x[i] * x[j];
  return s;
}

// Hat matrix written out straight from its definition.
inline Dense hat(const Dense& d) {
  const Dense inv = inverse(d);
  const std::size_t n = d.size();
  std::vector<double> x(n, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) x[i] += inv[i][j];
    s += x[i];
  }
  Dense h(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = x[i] * x[j] / s - inv[i][j];
  return h;
}

// Plain loop over all 2^n sign vectors, no Gray code, no symmetry reduction.
inline double brute_beta(const Dense& h) {
  const std::size_t n = h.size();
  double best = -INFINITY;
  std::vector<double> z(n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t i = 0; i < n; ++i) z[i] = (m >> i) & 1 ? -1.0 : 1.0;
    best = std::max(best, quad(h, z));
  }
  return best;
}

inline double brute_gap(const Dense& dp) { return 2.0 / brute_beta(hat(dp)); }

inline Dense power(const pgap::FiniteMetricSpace& x, double p) {
  Dense d = to_dense(x.distances());
  for (auto& row : d)
    for (auto& v : row) v = v == 0.0 ? 0.0 : std::pow(v, p);
  return d;
}

// Random ultrametric from a random merge history. Heights never decrease and
// repeat with some probability, which yields non-binary levels and discrete
// blocks. Heights are multiples of 1/4 so every distance is exact in binary.
inline pgap::FiniteMetricSpace random_ultrametric(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};
  pgap::Matrix d(n, n, 0.0);
  std::uniform_int_distribution<int> step(1, 8);
  std::bernoulli_distribution repeat(0.3);
  double h = 0.0;
  bool first = true;
  while (clusters.size() > 1) {
    if (first || !repeat(rng)) h += step(rng) * 0.25;
    first = false;
    std::uniform_int_distribution<std::size_t> pick(0, clusters.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    if (a > b) std::swap(a, b);
    for (std::size_t i : clusters[a])
      for (std::size_t j : clusters[b]) d(i, j) = d(j, i) = h;
    clusters[a].insert(clusters[a].end(), clusters[b].begin(), clusters[b].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(b));
  }
  return pgap::validate_metric(d);
}

inline std::vector<pgap::FiniteMetricSpace> ultrametric_corpus(std::size_t count, std::size_t max_n,
                                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  std::vector<pgap::FiniteMetricSpace> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_ultrametric(size(rng), rng));
  return out;
}

// Random points on a line: a metric of 1-negative type that is generally not
// ultrametric. Coordinates are distinct integers.
inline pgap::FiniteMetricSpace random_line(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> pos(40);
  std::iota(pos.begin(), pos.end(), 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  pgap::Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::abs(pos[i] - pos[j]);
  return pgap::validate_metric(d);
}

inline std::vector<double> random_f0(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  for (auto& v : x) v -= mean;
  // close the sum exactly as a left-to-right summation will see it
  x.back() = -std::accumulate(x.begin(), x.end() - 1, 0.0);
  return x;
}

// Bottleneck distance by trying every simple path (depth-first), for small graphs.
inline double minimax_by_paths(const pgap::WeightedGraph& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.vertices.size();
  std::vector<bool> seen(n, false);
  double best = INFINITY;
  std::function<void(std::size_t, double)> go = [&](std::size_t v, double worst) {
    if (v == to) {
      best = std::min(best, worst);
      return;
    }
    seen[v] = true;
    for (const auto& e : g.edges) {
      std::size_t w = n;
      if (e.u == v) w = e.v;
      if (e.v == v) w = e.u;
      if (w < n && !seen[w]) go(w, std::max(worst, e.weight));
    }
    seen[v] = false;
  };
  go(from, 0.0);
  return best;
}

inline std::vector<std::string> example_labels() { return {"a", "b", "c", "d", "e", "f", "g"}; }

inline pgap::Matrix example_matrix() {
  return {{0, 2, 2, 2, 3, 3, 4}, {2, 0, 2, 2, 3, 3, 4}, {2, 2, 0, 1, 3, 3, 4}, {2, 2, 1, 0, 3, 3, 4},
          {3, 3, 3, 3, 0, 1, 4}, {3, 3, 3, 3, 1, 0, 4}, {4, 4, 4, 4, 4, 4, 0}};
}

inline pgap::WeightedGraph example_graph() {
  pgap::WeightedGraph g;
  g.add_edge("a", "b", 2);
  g.add_edge("b", "c", 2);
  g.add_edge("c", "d", 1);
  g.add_edge("c", "e", 3);
  g.add_edge("e", "f", 1);
  g.add_edge("f", "g", 4);
  return g;
}

inline pgap::FiniteMetricSpace example_space() { return pgap::validate_metric(example_labels(), example_matrix()); }

// Name of the pgap::Error code thrown by `f`, or "none".
template <class F>
std::string thrown_code(F&& f) {
  try {
    f();
  } catch (const pgap::Error& e) {
    return pgap::to_string(e.code());
  }
  return "none";
}

}  // namespace oracle

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "pgap/bounds.hpp"
#include "pgap/ultrametric.hpp"

using namespace pgap;

namespace {

std::vector<std::string> names(const FiniteMetricSpace& x, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(x.label(i));
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("strictly ultrametric matrices") {
  const FiniteMetricSpace v = oracle::example_space();
  for (double p : {0.5, 1.0, 3.0}) {
    const Matrix dp = p_distance_matrix(v, p).entries;
    Matrix a(7, 7, std::pow(4, p));
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) a(i, j) -= dp(i, j);
    CHECK(strictly_ultrametric_check(a));
  }
  CHECK(strictly_ultrametric_check(Matrix::identity(4)));
  CHECK_FALSE(strictly_ultrametric_check(Matrix(3, 3, 1.0)));
  CHECK(oracle::thrown_code([] { strictly_ultrametric_check(Matrix{{1, 0}, {1, 1}}); }) == "NotSymmetric");
  CHECK(oracle::thrown_code([] { strictly_ultrametric_check(Matrix{{1, -1}, {-1, 1}}); }) == "NegativeEntry");
}

TEST_CASE("decomposition of the seven-point example") {
  const FiniteMetricSpace v = oracle::example_space();
  const UltrametricTree t = decompose(v);
  const UltrametricNode& root = t.root();
  CHECK(root.split_distance == 4);
  const UltrametricNode& v1 = t.nodes[*root.left];
  CHECK(names(v, v1.points) == Names{"a", "b", "c", "d", "e", "f"});
  CHECK(names(v, t.nodes[*root.right].points) == Names{"g"});
  CHECK(v1.split_distance == 3);
  const UltrametricNode& v3 = t.nodes[*v1.left];
  CHECK(names(v, v3.points) == Names{"a", "b", "c", "d"});
  CHECK(names(v, t.nodes[*v1.right].points) == Names{"e", "f"});
  CHECK(v3.split_distance == 2);
  CHECK(names(v, t.nodes[*v3.left].points) == Names{"a", "b"});
  CHECK(names(v, t.nodes[*v3.right].points) == Names{"c", "d"});
  CHECK(t.serialize(v) == "(split=4 (split=3 (split=2 [a b @ 2] [c d @ 1]) [e f @ 1]) [g @ 0])");
  CHECK(oracle::thrown_code([] { decompose(validate_metric(Matrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})); }) ==
        "NotUltrametric");
}

TEST_CASE("decomposition of discrete spaces") {
  const FiniteMetricSpace x2 = discrete_space(2, 3);
  const UltrametricTree full = decompose(x2, LeafPolicy::Singletons);
  CHECK(full.root().split_distance == 3);
  CHECK_FALSE(full.root().leaf());
  CHECK(full.nodes[*full.root().left].points == std::vector<std::size_t>{0});
  CHECK(full.nodes[*full.root().right].points == std::vector<std::size_t>{1});
  const UltrametricTree blocks = decompose(discrete_space(5, 1));
  CHECK(blocks.nodes.size() == 1);
  CHECK(blocks.root().leaf());
  CHECK(blocks.root().points.size() == 5);
}

TEST_CASE("tree invariants on random ultrametrics") {
  for (const auto& x : oracle::ultrametric_corpus(60, 12, 909))
    for (LeafPolicy policy : {LeafPolicy::DiscreteBlocks, LeafPolicy::Singletons}) {
      const UltrametricTree t = decompose(x, policy);
      std::function<void(std::size_t, double)> walk = [&](std::size_t id, double parent) {
        const UltrametricNode& node = t.nodes[id];
        CHECK(node.split_distance <= parent);
        CHECK(node.split_distance == diameter(x.subspace(node.points)));
        if (node.leaf()) {
          if (policy == LeafPolicy::Singletons) CHECK(node.points.size() == 1);
          else CHECK(is_discrete(x.subspace(node.points)));
          return;
        }
        const auto& l = t.nodes[*node.left].points;
        const auto& r = t.nodes[*node.right].points;
        CHECK(l.size() + r.size() == node.points.size());
        CHECK(l.front() < r.front());
        for (std::size_t i : l)
          for (std::size_t j : r) CHECK(x.distance(i, j) == node.split_distance);
        // glueing the two children at the split distance gives back the node
        const FiniteMetricSpace glued = glue_spaces({x.subspace(l), x.subspace(r), node.split_distance});
        std::vector<std::size_t> order = l;
        order.insert(order.end(), r.begin(), r.end());
        CHECK(glued.distances() == x.subspace(order).distances());
        walk(*node.left, node.split_distance);
        walk(*node.right, node.split_distance);
      };
      walk(0, INFINITY);
    }
}

TEST_CASE("recursive bounds on the seven-point example") {
  const FiniteMetricSpace v = oracle::example_space();
  const RecursiveGapBounds b = recursive_gap_bounds(v, 1);
  CHECK(b.lower_reciprocal == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(b.upper_reciprocal_coarse == doctest::Approx(33.0 / 4).epsilon(1e-15));
  CHECK(1 / b.upper_reciprocal_coarse == doctest::Approx(4.0 / 33));
  CHECK(b.gamma_upper() == doctest::Approx(0.4));
  const double g = gap_exact(p_distance_matrix(v, 1)).gamma;
  CHECK(g >= 4.0 / 33);
  CHECK(g <= 0.4);
  CHECK(g >= b.gamma_lower());
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    const RecursiveGapBounds r = recursive_gap_bounds(v, p);
    const double leaves = 1 + 1 / std::pow(2, p) + 1;
    CHECK(r.lower_reciprocal == doctest::Approx(leaves));
    CHECK(r.upper_reciprocal_coarse == doctest::Approx(leaves + 4 / std::pow(2, p) + 6 / std::pow(3, p) + 7 / std::pow(4, p)));
  }
}

TEST_CASE("recursive bounds of two points") {
  for (double d : {1.0, 2.5}) {
    const RecursiveGapBounds blocks = recursive_gap_bounds(discrete_space(2, d), 2);
    CHECK(blocks.lower_reciprocal == doctest::Approx(1 / (d * d)));
    CHECK(blocks.upper_reciprocal == doctest::Approx(1 / (d * d)));
    const RecursiveGapBounds full = recursive_gap_bounds(discrete_space(2, d), 2, LeafPolicy::Singletons);
    CHECK(full.lower_reciprocal == 0);
    CHECK(full.upper_reciprocal == doctest::Approx(1 / (d * d)));
    CHECK(full.gamma_lower() == doctest::Approx(d * d));
  }
  CHECK(oracle::thrown_code([] { recursive_gap_bounds(discrete_space(1, 1), 1); }) == "TooFewPoints");
}

TEST_CASE("recursive bounds contain the exact gap") {
  for (const auto& x : oracle::ultrametric_corpus(60, 12, 1001))
    for (double p : {0.5, 1.0, 2.0})
      for (LeafPolicy policy : {LeafPolicy::DiscreteBlocks, LeafPolicy::Singletons}) {
        const RecursiveGapBounds b = recursive_gap_bounds(x, p, policy);
        const double g = gap_exact(p_distance_matrix(x, p)).gamma;
        CHECK(b.lower_reciprocal <= b.upper_reciprocal);
        CHECK(b.upper_reciprocal <= b.upper_reciprocal_coarse);
        CHECK(g >= b.gamma_lower() - 1e-9);
        CHECK(g <= b.gamma_upper() + 1e-9);
        const UltrametricTree t = decompose(x, policy);
        for (const auto& term : b.terms) {
          const double size = static_cast<double>(t.nodes[term.node].points.size());
          CHECK(term.alpha <= size / term.diameter_p * (1 + 1e-12));
        }
      }
}

TEST_CASE("coteries and the asymptotic limit") {
  const FiniteMetricSpace v = oracle::example_space();
  const CoterieSet c = coteries(v);
  CHECK(c.alpha == 1);
  REQUIRE(c.count() == 2);
  CHECK(names(v, c.coteries[0]) == Names{"c", "d"});
  CHECK(names(v, c.coteries[1]) == Names{"e", "f"});
  CHECK(asymptotic_gap_limit(v) == doctest::Approx(0.5));

  const CoterieSet xn = coteries(discrete_space(5, 1));
  CHECK(xn.count() == 1);
  CHECK(xn.coteries[0].size() == 5);
  CHECK(asymptotic_gap_limit(discrete_space(5, 1)) == doctest::Approx(gamma_gap(5)));
  CHECK(asymptotic_gap_limit(discrete_space(2, 1)) == doctest::Approx(1));
  CHECK(coteries(discrete_space(2, 1)).count() == 1);
  for (double p : {1.0, 4.0, 9.0}) {
    CHECK(gap_exact(p_distance_matrix(discrete_space(5, 1), p)).gamma == doctest::Approx(gamma_gap(5)));
    CHECK(gap_exact(p_distance_matrix(discrete_space(2, 1), p)).gamma == doctest::Approx(1));
  }

  for (const auto& x : oracle::ultrametric_corpus(40, 10, 1102)) {
    const CoterieSet s = coteries(x);
    std::vector<int> owner(x.size(), -1);
    for (std::size_t k = 0; k < s.count(); ++k) {
      CHECK(s.coteries[k].size() >= 2);
      for (std::size_t i : s.coteries[k]) {
        CHECK(owner[i] == -1);
        owner[i] = static_cast<int>(k);
        for (std::size_t j : s.coteries[k]) CHECK(x.distance(i, j) <= s.alpha);
      }
    }
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (owner[i] >= 0 && i != j && x.distance(i, j) <= s.alpha) CHECK(owner[j] == owner[i]);
  }
}

TEST_CASE("large exponents approach the asymptotic limit") {
  const FiniteMetricSpace v = oracle::example_space();
  // values from tests/oracle/gap_reference.py
  const std::pair<double, double> reference[] = {
      {8, 0.49902436645569205727}, {12, 0.49993896853923394018}, {16, 0.4999961853172497186}, {25, 0.49999999254941945858}};
  for (const auto& [p, want] : reference) {
    const GapResult g = ultrametric_gap(v, p);
    CHECK(g.gamma == doctest::Approx(want).epsilon(1e-10));
  }
  int checked = 0;
  for (const auto& x : oracle::ultrametric_corpus(60, 8, 1203)) {
    const double alpha = space_stats(x).min_positive;
    double next = INFINITY;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x.distance(i, j) > alpha) next = std::min(next, x.distance(i, j));
    if (next < 2 * alpha) continue;
    ++checked;
    const double limit = asymptotic_gap_limit(x);
    const double at40 = ultrametric_gap(x, 40).gamma / std::pow(alpha, 40);
    CHECK(at40 == doctest::Approx(limit).epsilon(1e-6));
  }
  CHECK(checked >= 5);
}

TEST_CASE("structured hat data matches the generic path") {
  for (const auto& x : oracle::ultrametric_corpus(30, 10, 1304))
    for (double p : {0.5, 1.0, 2.0}) {
      const PDistanceMatrix dp = p_distance_matrix(x, p);
      const NegTypeCertificate c = certify(dp);
      const HatParts parts = ultrametric_hat_parts(x, p);
      const Matrix h = hat_matrix(dp, c).values;
      const double scale = max_abs(h);
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(parts.u[i] == doctest::Approx((*c.u_p)[i]).epsilon(1e-9));
        for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(parts.hat(i, j) - h(i, j)) <= 1e-9 * scale);
      }
      CHECK(parts.m == doctest::Approx(c.m_p).epsilon(1e-9));
      CHECK(ultrametric_gap(x, p).gamma == doctest::Approx(gap_exact(dp).gamma).epsilon(1e-9));
    }
}

TEST_CASE("lemmas on M_p and the inverse") {
  const UltrametricMpReport v = mp_ultrametric_properties(oracle::example_space(), 1);
  CHECK(v.inverse_entries_positive);
  CHECK(v.mp_bound_satisfied);
  for (std::size_t n = 2; n <= 8; ++n) {
    const UltrametricMpReport d = mp_ultrametric_properties(discrete_space(n, 1), 1);
    CHECK(d.m_p == doctest::Approx((n - 1.0) / n));
    CHECK(d.m_p == doctest::Approx(d.mp_bound).epsilon(1e-12));
  }
  const UltrametricMpReport two = mp_ultrametric_properties(discrete_space(2, 3), 2);
  CHECK(two.m_p == doctest::Approx(4.5));
  CHECK(two.mp_bound == doctest::Approx(4.5));
  CHECK(two.mp_bound_satisfied);
  for (const auto& x : oracle::ultrametric_corpus(40, 10, 1405))
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
      const UltrametricMpReport r = mp_ultrametric_properties(x, p);
      CHECK(r.inverse_entries_positive);
      CHECK(r.mp_bound_satisfied);
      const NegTypeCertificate c = certify(p_distance_matrix(x, p));
      CHECK(c.strict());
      CHECK(std::abs(norm1(*c.u_p) - 1) <= 1e-10);
    }
  CHECK(oracle::thrown_code([] { mp_ultrametric_properties(discrete_space(1, 1), 1); }) == "TooFewPoints");
}

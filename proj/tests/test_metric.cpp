#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pgap/metric.hpp"

using namespace pgap;

TEST_CASE("validate_metric accepts small and named spaces") {
  const FiniteMetricSpace two = validate_metric(Matrix{{0, 2}, {2, 0}});
  CHECK(two.size() == 2);
  CHECK(two.label(1) == "1");
  const FiniteMetricSpace v = oracle::example_space();
  CHECK(v.size() == 7);
  CHECK(is_ultrametric(v));
  CHECK(validate_metric(v.labels(), v.distances()) == v);
  CHECK(validate_metric(Matrix{{0}}).size() == 1);
}

TEST_CASE("validate_metric names the offending entries") {
  try {
    validate_metric(Matrix{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("accepted a triangle violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TriangleViolation);
    CHECK(e.indices() == std::vector<std::size_t>{0, 2, 1});
  }
  CHECK(oracle::thrown_code([] { validate_metric(Matrix{{0, 1}, {2, 0}}); }) == "AsymmetricMatrix");
  CHECK(oracle::thrown_code([] { validate_metric(Matrix{{1, 1}, {1, 0}}); }) == "NonzeroDiagonal");
  CHECK(oracle::thrown_code([] { validate_metric(Matrix{{0, 0}, {0, 0}}); }) == "NonpositiveOffDiagonal");
  CHECK(oracle::thrown_code([] { validate_metric(Matrix{{0, -1}, {-1, 0}}); }) == "NonpositiveOffDiagonal");
  CHECK(oracle::thrown_code([] { validate_metric({"a", "a"}, Matrix{{0, 1}, {1, 0}}); }) == "LabelCollision");
  CHECK(oracle::thrown_code([] { validate_metric({"a"}, Matrix{{0, 1}, {1, 0}}); }) == "DimensionMismatch");
}

TEST_CASE("round-off within the relative slack is accepted") {
  const double eps = 1e-12;
  CHECK_NOTHROW(validate_metric(Matrix{{0, 1, 2 + eps}, {1, 0, 1}, {2 + eps, 1, 0}}));
  CHECK(oracle::thrown_code([] { validate_metric(Matrix{{0, 1, 2.001}, {1, 0, 1}, {2.001, 1, 0}}); }) ==
        "TriangleViolation");
}

TEST_CASE("p-distance matrix") {
  const FiniteMetricSpace two = validate_metric(Matrix{{0, 2}, {2, 0}});
  CHECK(p_distance_matrix(two, 1).entries == Matrix{{0, 2}, {2, 0}});
  CHECK(p_distance_matrix(two, 2).entries == Matrix{{0, 4}, {4, 0}});
  CHECK(p_distance_matrix(oracle::example_space(), 1).entries == oracle::example_matrix());
  CHECK(oracle::thrown_code([&] { p_distance_matrix(two, 0); }) == "NonpositiveExponent");
  CHECK(oracle::thrown_code([&] { p_distance_matrix(two, -1); }) == "NonpositiveExponent");
}

TEST_CASE("discrete and scaled spaces") {
  CHECK(discrete_space(2, 1).distances() == Matrix{{0, 1}, {1, 0}});
  CHECK(discrete_space(3, 1).distances() == Matrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const FiniteMetricSpace x4 = discrete_space(4, 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(x4.distance(i, j) == (i == j ? 0.0 : 2.0));
  CHECK(scale_space(discrete_space(2, 1), 2) == discrete_space(2, 2));
  CHECK(scale_space(oracle::example_space(), 1) == oracle::example_space());
  CHECK(scale_space(discrete_space(3, 1), 0.5) == discrete_space(3, 0.5));
  CHECK(oracle::thrown_code([] { scale_space(discrete_space(3, 1), 0); }) == "NonpositiveScale");
  CHECK(is_discrete(discrete_space(5, 3)));
  CHECK_FALSE(is_discrete(oracle::example_space()));
}

TEST_CASE("scaling commutes with the entrywise power up to a few ulp") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const FiniteMetricSpace x = oracle::random_line(6, rng);
    for (double alpha : {0.3, 1.7, 5.0})
      for (double p : {0.5, 1.0, 2.0, 3.3}) {
        const Matrix a = p_distance_matrix(scale_space(x, alpha), p).entries;
        const Matrix b = p_distance_matrix(x, p).entries;
        const double f = std::pow(alpha, p);
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t j = 0; j < x.size(); ++j) {
            const double want = f * b(i, j);
            CHECK(std::abs(a(i, j) - want) <= 4 * std::numeric_limits<double>::epsilon() * want);
          }
      }
  }
}

TEST_CASE("ultrametric test") {
  CHECK(is_ultrametric(oracle::example_space()));
  CHECK_FALSE(is_ultrametric(validate_metric(Matrix{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}})));
  for (std::size_t n = 1; n < 6; ++n) CHECK(is_ultrametric(discrete_space(n, 1.5)));
}

TEST_CASE("space statistics") {
  const SpaceStats s = space_stats(oracle::example_space());
  CHECK(s.diameter == 4);
  CHECK(s.min_positive == 1);
  CHECK(s.ratio == 4);
  const SpaceStats d = space_stats(discrete_space(5, 1));
  CHECK(d.diameter == 1);
  CHECK(d.ratio == 1);
  const SpaceStats t = space_stats(discrete_space(2, 2));
  CHECK(t.diameter == 2);
  CHECK(t.min_positive == 2);
  CHECK(t.ratio == 1);
  CHECK(oracle::thrown_code([] { space_stats(discrete_space(1, 1)); }) == "SinglePoint");
}

TEST_CASE("minimax-path spaces") {
  const FiniteMetricSpace v = ultrametric_from_graph(oracle::example_graph());
  CHECK(v.labels() == oracle::example_labels());
  CHECK(v.distances() == oracle::example_matrix());

  WeightedGraph single;
  single.add_edge("a", "b", 3);
  CHECK(ultrametric_from_graph(single).distance(0, 1) == 3);

  WeightedGraph tri;
  tri.add_edge("x", "y", 1);
  tri.add_edge("y", "z", 2);
  tri.add_edge("x", "z", 5);
  const FiniteMetricSpace t = ultrametric_from_graph(tri);
  CHECK(t.distance(0, 2) == 2);
  CHECK(t.distance(0, 2) == oracle::minimax_by_paths(tri, 0, 2));

  WeightedGraph split;
  split.add_edge("a", "b", 1);
  split.add_edge("c", "d", 1);
  CHECK_FALSE(split.connected());
  CHECK(oracle::thrown_code([&] { ultrametric_from_graph(split); }) == "DisconnectedGraph");
}

TEST_CASE("random connected graphs give ultrametrics matching path enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> weight(0.5, 9.5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 8;
    WeightedGraph g;
    for (std::size_t v = 1; v < n; ++v) {
      std::uniform_int_distribution<std::size_t> parent(0, v - 1);
      const std::size_t u = parent(rng);
      g.add_edge("v" + std::to_string(u), "v" + std::to_string(v), std::round(weight(rng) * 4) / 4);
    }
    const bool tree_only = trial % 2 == 0;
    if (!tree_only) {
      std::uniform_int_distribution<std::size_t> any(0, n - 1);
      for (int extra = 0; extra < 3; ++extra) {
        const std::size_t a = any(rng), b = any(rng);
        if (a != b) g.add_edge("v" + std::to_string(a), "v" + std::to_string(b), std::round(weight(rng) * 4) / 4);
      }
    }
    const FiniteMetricSpace x = ultrametric_from_graph(g);
    CHECK(is_ultrametric(x));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) CHECK(x.distance(i, j) == oracle::minimax_by_paths(g, i, j));
  }
}

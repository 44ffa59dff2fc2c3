#include "pgap/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "pgap/bounds.hpp"
#include "pgap/error.hpp"

namespace pgap {
namespace {

void require_ultrametric(const FiniteMetricSpace& x) {
  if (!is_ultrametric(x)) throw Error(Errc::NotUltrametric, "space violates the strong triangle inequality");
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double subset_diameter(const FiniteMetricSpace& x, const std::vector<std::size_t>& pts) {
  double d = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) d = std::max(d, x.distance(pts[a], pts[b]));
  return d;
}

bool subset_discrete(const FiniteMetricSpace& x, const std::vector<std::size_t>& pts) {
  if (pts.size() <= 2) return true;
  const double first = x.distance(pts[0], pts[1]);
  const double slack = kMetricRelTol * first;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if (std::abs(x.distance(pts[a], pts[b]) - first) > slack) return false;
  return true;
}

std::size_t build(const FiniteMetricSpace& x, std::vector<std::size_t> pts, LeafPolicy policy,
                  std::vector<UltrametricNode>& nodes) {
  const std::size_t id = nodes.size();
  nodes.push_back({});
  const double delta = subset_diameter(x, pts);
  nodes[id].split_distance = delta;
  if (pts.size() == 1 || (policy == LeafPolicy::DiscreteBlocks && subset_discrete(x, pts))) {
    nodes[id].points = std::move(pts);
    return id;
  }

  // Points closer than the diameter form classes; any union of classes splits off at distance delta.
  // Singleton classes are gathered into one discrete block when that leaves something on the other side.
  const double slack = kMetricRelTol * delta;
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t q : pts) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return x.distance(c.front(), q) < delta - slack; });
    if (it == classes.end())
      classes.push_back({q});
    else
      it->push_back(q);
  }
  std::size_t singles = 0;
  for (const auto& c : classes) singles += c.size() == 1;
  const bool gather = singles > 0 && singles < classes.size();
  std::vector<std::size_t> near, far;
  for (const auto& c : classes) {
    const bool first = gather ? c.size() == 1 : &c == &classes.front();
    auto& side = first ? near : far;
    side.insert(side.end(), c.begin(), c.end());
  }
  std::sort(near.begin(), near.end());
  std::sort(far.begin(), far.end());
  if (far.front() < near.front()) std::swap(near, far);

  nodes[id].points = std::move(pts);
  const std::size_t l = build(x, std::move(near), policy, nodes);
  const std::size_t r = build(x, std::move(far), policy, nodes);
  nodes[id].left = l;
  nodes[id].right = r;
  return id;
}

}  // namespace

bool strictly_ultrametric_check(const Matrix& a) {
  if (!a.square() || relative_asymmetry(a) != 0.0) throw Error(Errc::NotSymmetric, "matrix is not symmetric");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) < 0.0) throw Error(Errc::NegativeEntry, "negative entry", {i, j});

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (a(i, j) < std::min(a(i, k), a(k, j))) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && !(a(i, i) > a(i, j))) return false;
  return true;
}

UltrametricTree decompose(const FiniteMetricSpace& x, LeafPolicy policy) {
  require_ultrametric(x);
  UltrametricTree tree;
  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  build(x, std::move(all), policy, tree.nodes);
  return tree;
}

std::string UltrametricTree::serialize(const FiniteMetricSpace& x) const {
  std::function<void(std::size_t, std::ostringstream&)> emit = [&](std::size_t id, std::ostringstream& os) {
    const UltrametricNode& node = nodes[id];
    if (node.leaf()) {
      os << '[';
      for (std::size_t i = 0; i < node.points.size(); ++i) os << (i ? " " : "") << x.label(node.points[i]);
      os << " @ " << number(node.split_distance) << ']';
      return;
    }
    os << "(split=" << number(node.split_distance) << ' ';
    emit(*node.left, os);
    os << ' ';
    emit(*node.right, os);
    os << ')';
  };
  std::ostringstream os;
  emit(0, os);
  return os.str();
}

RecursiveGapBounds recursive_gap_bounds(const FiniteMetricSpace& x, double p, LeafPolicy policy) {
  if (x.size() < 2) throw Error(Errc::TooFewPoints, "recursive bounds need at least two points");
  if (!(p > 0.0)) throw Error(Errc::NonpositiveExponent, "exponent must be positive");
  const UltrametricTree tree = decompose(x, policy);
  RecursiveGapBounds out;

  struct Acc {
    double lower, upper, coarse;
  };
  std::function<Acc(std::size_t)> walk = [&](std::size_t id) -> Acc {
    const UltrametricNode& node = tree.nodes[id];
    const std::size_t size = node.points.size();
    if (node.leaf()) {
      if (size == 1) return {0.0, 0.0, 0.0};
      const double exact = 1.0 / (std::pow(node.split_distance, p) * gamma_gap(size));
      return {exact, exact, exact};
    }
    const Acc a = walk(*node.left);
    const Acc b = walk(*node.right);
    const UltrametricNode& l = tree.nodes[*node.left];
    const UltrametricNode& r = tree.nodes[*node.right];
    auto shrink = [p](const UltrametricNode& c) {
      const double k = static_cast<double>(c.points.size());
      return (k - 1.0) / k * std::pow(c.split_distance, p);
    };
    SplitTerm term;
    term.node = id;
    term.diameter_p = std::pow(node.split_distance, p);
    term.denominator = 2.0 * term.diameter_p - shrink(l) - shrink(r);
    term.alpha = 2.0 / term.denominator;
    term.alpha_coarse = static_cast<double>(size) / term.diameter_p;
    out.terms.push_back(term);
    return {a.lower + b.lower, a.upper + b.upper + term.alpha, a.coarse + b.coarse + term.alpha_coarse};
  };
  const Acc total = walk(0);
  out.lower_reciprocal = total.lower;
  out.upper_reciprocal = total.upper;
  out.upper_reciprocal_coarse = total.coarse;
  return out;
}

CoterieSet coteries(const FiniteMetricSpace& x) {
  require_ultrametric(x);
  const SpaceStats stats = space_stats(x);
  CoterieSet out;
  out.alpha = stats.min_positive;
  const double reach = stats.min_positive + kMetricRelTol * stats.diameter;
  for (std::size_t z = 0; z < x.size(); ++z) {
    std::vector<std::size_t> ball;
    for (std::size_t q = 0; q < x.size(); ++q)
      if (x.distance(q, z) <= reach) ball.push_back(q);
    if (ball.size() < 2) continue;
    if (std::find(out.coteries.begin(), out.coteries.end(), ball) == out.coteries.end())
      out.coteries.push_back(std::move(ball));
  }
  std::sort(out.coteries.begin(), out.coteries.end());
  return out;
}

double asymptotic_gap_limit(const FiniteMetricSpace& x) {
  const CoterieSet set = coteries(x);
  double recip = 0.0;
  for (const auto& b : set.coteries) recip += 1.0 / gamma_gap(b.size());
  return 1.0 / recip;
}

UltrametricMpReport mp_ultrametric_properties(const FiniteMetricSpace& x, double p) {
  require_ultrametric(x);
  if (x.size() < 2) throw Error(Errc::TooFewPoints, "needs at least two points");
  const PDistanceMatrix dp = p_distance_matrix(x, p);
  const NegTypeCertificate cert = certify(dp);
  const double n = static_cast<double>(x.size());

  UltrametricMpReport out;
  out.m_p = cert.m_p;
  out.mp_bound = (n - 1.0) / n * std::pow(diameter(x), p);
  if (cert.b) {
    out.inverse_row_sums = *cert.b;
    out.inverse_entries_positive =
        std::all_of(cert.b->begin(), cert.b->end(), [](double v) { return v > 0.0; });
  }
  out.mp_bound_satisfied = std::isfinite(out.m_p) && out.m_p <= out.mp_bound * (1.0 + 1e-10);
  return out;
}

HatParts ultrametric_hat_parts(const FiniteMetricSpace& x, double p) {
  if (!(p > 0.0)) throw Error(Errc::NonpositiveExponent, "exponent must be positive");
  const UltrametricTree tree = decompose(x, LeafPolicy::Singletons);

  // Parts are assembled in tree order; `order` maps tree slots to indices.
  std::vector<std::size_t> order;
  std::function<HatParts(std::size_t)> walk = [&](std::size_t id) -> HatParts {
    const UltrametricNode& node = tree.nodes[id];
    if (node.leaf()) {
      order.push_back(node.points.front());
      return singleton_hat_parts();
    }
    const HatParts l = walk(*node.left);
    const HatParts r = walk(*node.right);
    return glue_hat_parts(l, r, std::pow(node.split_distance, p));
  };
  const HatParts slotted = walk(0);

  const std::size_t n = x.size();
  HatParts out;
  out.m = slotted.m;
  out.hat = Matrix(n, n);
  out.u.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    out.u[order[a]] = slotted.u[a];
    for (std::size_t b = 0; b < n; ++b) out.hat(order[a], order[b]) = slotted.hat(a, b);
  }
  return out;
}

GapResult ultrametric_gap(const FiniteMetricSpace& x, double p, const GapOptions& options) {
  if (x.size() == 1) return {kInfinity, 0.0, {1}, GapMethod::SinglePoint};
  return gap_from_hat(ultrametric_hat_parts(x, p).hat, options);
}

}  // namespace pgap

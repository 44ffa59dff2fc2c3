#include <cmath>
#include <random>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"
#include "pgap/negtype.hpp"

namespace pgap {
namespace {

constexpr int kDescentIterations = 400;
constexpr int kBacktrackLimit = 60;

class Objective {
 public:
  explicit Objective(const Matrix& d) : d_(d), n_(d.rows()), k_(kernels::active()) {}

  // (-D x|x) / ||x||_1^2
  double operator()(const Vector& x) const {
    const double l1 = norm1(x);
    return -k_.quad_form(d_.data(), n_, x.data()) / (l1 * l1);
  }

  // Gradient at a point with ||x||_1 = 1, projected onto sum = 0.
  Vector gradient(const Vector& x, double value) const {
    Vector g(n_);
    k_.matvec(d_.data(), n_, x.data(), g.data());
    double mean = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double s = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
      g[i] = -2.0 * g[i] - 2.0 * value * s;
      mean += g[i];
    }
    mean /= static_cast<double>(n_);
    for (double& v : g) v -= mean;
    return g;
  }

  std::size_t size() const { return n_; }
  const Matrix& d() const { return d_; }

 private:
  const Matrix& d_;
  std::size_t n_;
  const kernels::KernelTable& k_;
};

// Returns false for the zero vector.
bool normalize(Vector& x) {
  const double mean = sum(x) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  const double l1 = norm1(x);
  if (!(l1 > 0.0)) return false;
  for (double& v : x) v /= l1;
  return true;
}

// Minimizes (-D x|x) subject to sum(x) = 0 and (s|x) = 1 via its KKT system.
bool polish(const Matrix& d, const Vector& signs, Vector& x) {
  const std::size_t n = d.rows();
  Matrix kkt(n + 2, n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) kkt(i, j) = -2.0 * d(i, j);
    kkt(i, n) = kkt(n, i) = 1.0;
    kkt(i, n + 1) = kkt(n + 1, i) = signs[i];
  }
  Vector rhs(n + 2, 0.0);
  rhs[n + 1] = 1.0;
  if (!solve_general(std::move(kkt), rhs)) return false;
  x.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(n));
  return normalize(x);
}

Vector sign_pattern(const Vector& x) {
  Vector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] < 0.0 ? -1.0 : 1.0;
  return s;
}

double descend(const Objective& f, Vector& x) {
  double value = f(x);
  double step = 1.0 / std::max(1.0, frobenius_norm(f.d()));
  Vector trial(f.size());
  for (int it = 0; it < kDescentIterations; ++it) {
    const Vector g = f.gradient(x, value);
    const double gg = dot(g, g);
    if (!(gg > 1e-30)) break;
    bool moved = false;
    for (int bt = 0; bt < kBacktrackLimit; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - step * g[i];
      if (normalize(trial)) {
        const double tv = f(trial);
        if (tv <= value - 1e-4 * step * gg) {
          x = trial;
          const double gain = value - tv;
          value = tv;
          moved = gain > 1e-16 * std::abs(value);
          step *= 2.0;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return value;
}

}  // namespace

OracleResult gap_numeric_oracle(const PDistanceMatrix& dp, int restarts, std::uint64_t seed) {
  const NegTypeCertificate cert = certify(dp);
  if (!cert.strict() || dp.size() < 2) throw Error(Errc::NotStrict, "numeric oracle needs a strict space of two or more points");
  const std::size_t n = dp.size();
  const Objective f(dp.entries);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  OracleResult best;
  best.gamma = kInfinity;
  double best_value = kInfinity;
  Vector x(n);
  for (int r = 0; r < std::max(1, restarts); ++r) {
    for (double& v : x) v = normal(rng);
    if (!normalize(x)) continue;
    double value = descend(f, x);

    // Sign-pattern refinement; every candidate is feasible, so only improve.
    for (std::size_t round = 0; round < 3 * n; ++round) {
      Vector candidate;
      if (!polish(dp.entries, sign_pattern(x), candidate)) break;
      const double cv = f(candidate);
      if (!(cv < value - 1e-15 * std::abs(value))) break;
      x = std::move(candidate);
      value = cv;
    }
    if (value < best_value) {
      best_value = value;
      best.minimizer = x;
    }
  }
  best.gamma = 2.0 * best_value;
  return best;
}

}  // namespace pgap

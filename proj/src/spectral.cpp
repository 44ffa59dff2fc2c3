#include "pgap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"

namespace pgap {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Matrix& a) { return {a.data(), Eigen::Index(a.rows()), Eigen::Index(a.cols())}; }

}  // namespace

double Spectrum::spectral_norm() const {
  double m = 0.0;
  for (double v : eigenvalues) m = std::max(m, std::abs(v));
  return m;
}

Vector Spectrum::eigenvector(std::size_t i) const {
  Vector f(size());
  for (std::size_t r = 0; r < size(); ++r) f[r] = eigenvectors(r, i);
  return f;
}

Spectrum sym_eigen(const Matrix& input) {
  if (!input.square()) throw Error(Errc::DimensionMismatch, "eigendecomposition needs a square matrix");
  if (relative_asymmetry(input) > 1e-12) throw Error(Errc::NotSymmetric, "matrix is not symmetric");
  const std::size_t n = input.rows();

  RowMajor a = view(input);
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error(Errc::NoConvergence, "eigensolver did not converge");
  const Eigen::VectorXd& d = solver.eigenvalues();
  const Eigen::MatrixXd& v = solver.eigenvectors();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = d[order[c]];
    // Fix the sign so the largest-magnitude component is positive.
    std::size_t lead = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (std::abs(v(r, order[c])) > std::abs(v(lead, order[c]))) lead = r;
    const double sign = v(lead, order[c]) < 0.0 ? -1.0 : 1.0;
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = sign * v(r, order[c]);
  }
  out.zero_tol = kZeroRelTol * std::max(1.0, out.spectral_norm());
  return out;
}

SolveResult solve_sym(const Matrix& a, std::span<const double> rhs) {
  return solve_sym(a, sym_eigen(a), rhs);
}

SolveResult solve_sym(const Matrix& a, const Spectrum& spectrum, std::span<const double> rhs) {
  const std::size_t n = spectrum.size();
  if (a.rows() != n || rhs.size() != n) throw Error(Errc::DimensionMismatch, "solve shapes disagree");
  SolveResult out;
  out.solution.assign(n, 0.0);
  const auto& k = kernels::active();
  Vector f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = spectrum.eigenvalues[i];
    if (std::abs(lambda) <= spectrum.zero_tol) {
      out.singular = true;
      continue;
    }
    for (std::size_t r = 0; r < n; ++r) f[r] = spectrum.eigenvectors(r, i);
    const double coeff = k.dot(f.data(), rhs.data(), n) / lambda;
    k.axpy(coeff, f.data(), out.solution.data(), n);
  }
  Vector back = multiply(a, out.solution);
  for (std::size_t i = 0; i < n; ++i) back[i] -= rhs[i];
  out.residual_norm = norm2(back);
  return out;
}

Matrix inverse_from_spectrum(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = spectrum.eigenvalues[i];
    if (std::abs(lambda) <= spectrum.zero_tol) throw Error(Errc::InvalidArgument, "matrix is numerically singular");
    for (std::size_t r = 0; r < n; ++r) {
      const double fr = spectrum.eigenvectors(r, i) / lambda;
      for (std::size_t c = 0; c < n; ++c) inv(r, c) += fr * spectrum.eigenvectors(c, i);
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) inv(r, c) = inv(c, r) = 0.5 * (inv(r, c) + inv(c, r));
  return inv;
}

bool solve_general(Matrix a, Vector& rhs, double pivot_tol) {
  const std::size_t n = a.rows();
  if (!a.square() || rhs.size() != n) throw Error(Errc::DimensionMismatch, "solve shapes disagree");
  const double scale = max_abs(a);
  if (scale == 0.0) return false;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd(view(a)));
  if ((lu.matrixLU().diagonal().array().abs() <= pivot_tol * scale).any()) return false;
  Eigen::Map<Eigen::VectorXd> b(rhs.data(), Eigen::Index(n));
  b = lu.solve(Eigen::VectorXd(b));
  return true;
}

}  // namespace pgap

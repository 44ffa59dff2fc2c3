#include "pgap/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "pgap/error.hpp"
#include "pgap/kernels.hpp"

namespace pgap {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged rows", {i});
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  const auto& k = kernels::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double s = a(i, l);
      if (s != 0.0) k.axpy(s, b.row(l).data(), out.data(), b.cols());
    }
  }
  return c;
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shapes");
  const auto& k = kernels::active();
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot product lengths");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double sum(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

double norm1(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) s += a.data()[i] * a.data()[i];
  return std::sqrt(s);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

double relative_asymmetry(const Matrix& a) {
  if (!a.square()) throw Error(Errc::DimensionMismatch, "asymmetry of a non-square matrix");
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst / scale;
}

Matrix submatrix(const Matrix& a, std::span<const std::size_t> index) {
  Matrix s(index.size(), index.size());
  for (std::size_t i = 0; i < index.size(); ++i)
    for (std::size_t j = 0; j < index.size(); ++j) s(i, j) = a(index[i], index[j]);
  return s;
}

Vector ones(std::size_t n) { return Vector(n, 1.0); }

}  // namespace pgap

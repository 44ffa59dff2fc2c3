#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pgap {

using Vector = std::vector<double>;

// Dense row-major matrix. Rows are contiguous so kernels can stream them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double norm1(std::span<const double> x);
double norm2(std::span<const double> x);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);

// Largest |a_ij - a_ji| relative to max |a_ij|; zero for the zero matrix.
double relative_asymmetry(const Matrix& a);

// Principal submatrix on the given index set, in the given order.
Matrix submatrix(const Matrix& a, std::span<const std::size_t> index);

Vector ones(std::size_t n);

}  // namespace pgap

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hgatelda {

/// Dense row-major matrix of doubles. The numeric kernels below reject
/// non-finite results, so NaN/Inf cannot propagate silently.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  /// Builds from nested braces; throws if rows are ragged or entries non-finite.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> flat() { return {data_.data(), data_.size()}; }
  std::span<const double> flat() const { return {data_.data(), data_.size()}; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;
  std::string shape_str() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Standard product; throws std::invalid_argument naming both shapes on
/// dimension mismatch and NumericError if the result overflows to non-finite.
Matrix matmul(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

/// Elementwise max(x, slope*x). slope must lie in (0,1).
Matrix leaky_relu(const Matrix& x, double slope);

/// Derivative of leaky_relu taken entrywise at x (slope on the nonpositive side).
double leaky_relu_deriv(double x, double slope);

/// Row-wise softmax restricted to entries where mask != 0. Masked entries of
/// the result are exactly 0; each row is stabilized by subtracting its max
/// unmasked score before exponentiation. A fully masked row throws InputError
/// (it signals an empty neighborhood upstream).
Matrix masked_softmax(const Matrix& scores, const Matrix& mask);

/// In-place stabilized softmax over a contiguous span; shared by
/// masked_softmax and the sparse attention path.
void stable_softmax_inplace(std::span<double> values);

/// Rows [begin, end) as a new matrix.
Matrix slice_rows(const Matrix& m, std::size_t begin, std::size_t end);

/// Row-wise concatenation; column counts must match.
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// Mean squared error over all entries; shapes must match.
double mean_squared_error(const Matrix& a, const Matrix& b);

/// max over entries of |a-b| / max(|a|, |b|, floor); used by gradient checks.
double max_relative_error(const Matrix& a, const Matrix& b, double floor = 1e-6);

}  // namespace hgatelda

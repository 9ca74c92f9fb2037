#include "hgatelda/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgatelda/errors.hpp"

namespace hgatelda {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged row " + std::to_string(i));
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  if (!m.all_finite()) throw std::invalid_argument("from_rows: non-finite entry");
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

std::string Matrix::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: incompatible shapes " + a.shape_str() + " and " +
                                b.shape_str());
  }
  Matrix out(a.rows(), b.cols());
  // ikj order keeps the inner loop contiguous in b and out. Skipping exact
  // zeros is a large win on the binary association matrices and does not
  // change the result (inputs are finite).
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  if (!out.all_finite()) throw NumericError("matmul: non-finite result");
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

Matrix leaky_relu(const Matrix& x, double slope) {
  if (!(slope > 0.0 && slope < 1.0))
    throw std::invalid_argument("leaky_relu: slope must lie in (0,1)");
  Matrix out = x;
  for (double& v : out.flat()) {
    if (v < 0.0) v *= slope;
  }
  if (!out.all_finite()) throw NumericError("leaky_relu: non-finite result");
  return out;
}

double leaky_relu_deriv(double x, double slope) { return x > 0.0 ? 1.0 : slope; }

void stable_softmax_inplace(std::span<double> values) {
  if (values.empty()) return;
  const double mx = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double& v : values) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : values) v /= sum;
}

Matrix masked_softmax(const Matrix& scores, const Matrix& mask) {
  if (!scores.same_shape(mask)) {
    throw std::invalid_argument("masked_softmax: shape mismatch " + scores.shape_str() + " vs " +
                                mask.shape_str());
  }
  Matrix out(scores.rows(), scores.cols());
  std::vector<double> packed;
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    packed.clear();
    active.clear();
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      if (mask(i, j) != 0.0) {
        active.push_back(j);
        packed.push_back(scores(i, j));
      }
    }
    if (active.empty()) {
      throw InputError("masked_softmax: row " + std::to_string(i) +
                       " has an empty neighborhood (all entries masked)");
    }
    stable_softmax_inplace(packed);
    for (std::size_t k = 0; k < active.size(); ++k) out(i, active[k]) = packed[k];
  }
  return out;
}

Matrix slice_rows(const Matrix& m, std::size_t begin, std::size_t end) {
  if (begin > end || end > m.rows()) throw std::invalid_argument("slice_rows: bad range");
  Matrix out(end - begin, m.cols());
  for (std::size_t i = begin; i < end; ++i) {
    auto src = m.row(i);
    std::copy(src.begin(), src.end(), out.row(i - begin).begin());
  }
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("vstack: column mismatch " + top.shape_str() + " vs " +
                                bottom.shape_str());
  }
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i) {
    auto src = top.row(i);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  for (std::size_t i = 0; i < bottom.rows(); ++i) {
    auto src = bottom.row(i);
    std::copy(src.begin(), src.end(), out.row(top.rows() + i).begin());
  }
  return out;
}

double mean_squared_error(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("mean_squared_error: shape mismatch " + a.shape_str() + " vs " +
                                b.shape_str());
  }
  if (a.empty()) return 0.0;
  double sum = 0.0;
  auto fa = a.flat();
  auto fb = b.flat();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double d = fa[i] - fb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(fa.size());
}

double max_relative_error(const Matrix& a, const Matrix& b, double floor) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument("max_relative_error: shape mismatch " + a.shape_str() + " vs " +
                                b.shape_str());
  }
  double worst = 0.0;
  auto fa = a.flat();
  auto fb = b.flat();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double denom = std::max({std::abs(fa[i]), std::abs(fb[i]), floor});
    worst = std::max(worst, std::abs(fa[i] - fb[i]) / denom);
  }
  return worst;
}

}  // namespace hgatelda

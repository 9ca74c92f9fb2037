#include "hgatelda/gradcheck.hpp"

#include <cmath>
#include <stdexcept>

#include "hgatelda/errors.hpp"

namespace hgatelda {

Matrix finite_diff_grad(const std::function<double(const Matrix&)>& loss, const Matrix& params,
                        double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff_grad: h must be positive");
  Matrix probe = params;
  Matrix grad(params.rows(), params.cols());
  auto p = probe.flat();
  auto g = grad.flat();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + h;
    const double up = loss(probe);
    p[i] = saved - h;
    const double down = loss(probe);
    p[i] = saved;
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NumericError("finite_diff_grad: non-finite loss at probe point");
    }
    g[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace hgatelda

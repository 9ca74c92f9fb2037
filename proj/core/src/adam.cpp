#include "hgatelda/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "hgatelda/errors.hpp"

namespace hgatelda {

void AdamState::step(Matrix& params, const Matrix& grads) {
  if (!params.same_shape(first_) || !grads.same_shape(first_)) {
    throw std::invalid_argument("adam: shape mismatch, state " + first_.shape_str() +
                                ", params " + params.shape_str() + ", grads " +
                                grads.shape_str());
  }
  ++steps_;
  const double b1 = cfg_.beta1;
  const double b2 = cfg_.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(steps_));

  auto p = params.flat();
  auto g = grads.flat();
  auto m = first_.flat();
  auto v = second_.flat();
  for (std::size_t i = 0; i < p.size(); ++i) {
    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
    const double mhat = m[i] / corr1;
    const double vhat = v[i] / corr2;
    p[i] -= cfg_.learning_rate * mhat / (std::sqrt(vhat) + cfg_.epsilon);
  }
  if (!params.all_finite()) throw NumericError("adam: parameters became non-finite");
}

}  // namespace hgatelda

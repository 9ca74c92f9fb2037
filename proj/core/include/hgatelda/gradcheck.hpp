#pragma once

#include <functional>

#include "hgatelda/matrix.hpp"

namespace hgatelda {

/// Central-difference gradient estimate of a scalar loss with respect to a
/// parameter matrix: (loss(p + h*e) - loss(p - h*e)) / 2h entrywise.
/// Throws NumericError if a probe evaluates non-finite, invalid_argument if
/// h <= 0.
Matrix finite_diff_grad(const std::function<double(const Matrix&)>& loss, const Matrix& params,
                        double h);

}  // namespace hgatelda

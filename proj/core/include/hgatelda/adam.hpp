#pragma once

#include <cstdint>

#include "hgatelda/matrix.hpp"

namespace hgatelda {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-parameter Adam state with bias correction. The moment accumulators
/// share the tracked parameter's shape; the step counter increases by exactly
/// one per update.
class AdamState {
 public:
  AdamState(std::size_t rows, std::size_t cols, const AdamConfig& cfg = {})
      : cfg_(cfg), first_(rows, cols), second_(rows, cols) {}

  /// Applies one bias-corrected update in place; throws on shape mismatch.
  void step(Matrix& params, const Matrix& grads);

  std::uint64_t step_count() const { return steps_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  Matrix first_;
  Matrix second_;
  std::uint64_t steps_ = 0;
};

}  // namespace hgatelda

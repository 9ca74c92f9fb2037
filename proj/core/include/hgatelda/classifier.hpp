#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hgatelda/adam.hpp"
#include "hgatelda/associations.hpp"
#include "hgatelda/matrix.hpp"
#include "hgatelda/rng.hpp"

namespace hgatelda {

/// Everything pair fusion needs: linear and nonlinear features split per
/// axis. fl_nl/fd_nl are the first p / last q rows of the auto-encoder
/// latent.
struct FeatureBundle {
  Matrix fl;     // p x l
  Matrix fl_nl;  // p x l'
  Matrix fd;     // q x l
  Matrix fd_nl;  // q x l'

  std::size_t pair_dim() const { return 2 * (fl.cols() + fl_nl.cols()); }
};

/// Splits the stacked latent into its lncRNA and disease halves.
std::pair<Matrix, Matrix> split_latent(const Matrix& latent, std::size_t lncrna_count);

/// Feature-combination arms used by the ablation study. Excluded segments
/// are zeroed, keeping the pair dimension fixed.
enum class FeatureArm { Fused, LinearOnly, NonlinearOnly };

const char* feature_arm_name(FeatureArm arm);

/// Pair vector [f_l(i) || f'_l(i) || f_d(j) || f'_d(j)], length 2(l+l').
std::vector<double> fuse(std::size_t lnc, std::size_t dis, const FeatureBundle& features,
                         FeatureArm arm = FeatureArm::Fused);

/// Uniform sample (without replacement) of zero entries of ld, disjoint from
/// `excluded`; deterministic given the rng. Throws InputError if fewer
/// eligible zero entries than requested.
std::vector<std::pair<std::size_t, std::size_t>> sample_negatives(
    const AssociationMatrix& ld, std::size_t count, SeededRng& rng,
    std::span<const std::pair<std::size_t, std::size_t>> excluded = {});

/// Positive and negative index pairs with the classifier's labels.
struct PairSet {
  std::vector<std::pair<std::size_t, std::size_t>> positives;
  std::vector<std::pair<std::size_t, std::size_t>> negatives;

  /// Verifies disjointness and index ranges.
  void validate(std::size_t lncrna_count, std::size_t disease_count) const;
};

/// Sample matrix (one fused pair per row) plus 0/1 labels, positives first.
struct TrainingSet {
  Matrix inputs;
  std::vector<int> labels;
};

TrainingSet build_training_set(const PairSet& pairs, const FeatureBundle& features,
                               FeatureArm arm = FeatureArm::Fused);

struct DenseLayer {
  Matrix weights;  // out x in
  Matrix bias;     // out x 1
};

/// Feed-forward net with leaky-ReLU hidden layers and a sigmoid output unit.
/// Dropout (inverted, rate alpha) is applied to hidden activations during
/// training only.
struct ClassifierModel {
  std::vector<DenseLayer> hidden;
  DenseLayer output;
  double leaky_slope = 0.2;

  std::size_t input_dim() const { return hidden.empty() ? output.weights.cols() : hidden.front().weights.cols(); }
};

struct ClassifierConfig {
  std::vector<std::size_t> hidden_dims{128, 64, 32};
  double learning_rate = 1e-3;
  double dropout = 0.2;
  std::size_t epochs = 100;
  double leaky_slope = 0.2;
  /// All-zero weights and biases (reproduces the published initialization;
  /// hidden units stay symmetric, so this is off by default).
  bool zero_init = false;
};

ClassifierModel init_classifier(std::size_t input_dim, const ClassifierConfig& cfg,
                                SeededRng& rng);

/// Mean binary cross-entropy of the model on (inputs, labels), computed via
/// logits for stability. No dropout.
double classifier_loss(const ClassifierModel& model, const Matrix& inputs,
                       const std::vector<int>& labels);

struct ClassifierGradients {
  std::vector<DenseLayer> hidden;
  DenseLayer output;
};

/// Analytic BCE gradients without dropout (the path gradient checks probe).
ClassifierGradients classifier_gradients(const ClassifierModel& model, const Matrix& inputs,
                                         const std::vector<int>& labels);

/// Full-batch Adam training on binary cross-entropy. Throws InputError on a
/// single-class training set and NumericError (naming the epoch) on
/// divergence.
ClassifierModel train_classifier(const ClassifierConfig& cfg, const TrainingSet& data,
                                 SeededRng& rng);

/// Sigmoid score in (0,1); dropout disabled; pure in (model, input).
double predict(const ClassifierModel& model, std::span<const double> input);

std::vector<double> predict_batch(const ClassifierModel& model, const Matrix& inputs);

}  // namespace hgatelda

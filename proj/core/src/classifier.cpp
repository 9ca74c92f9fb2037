#include "hgatelda/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "hgatelda/errors.hpp"

namespace hgatelda {

std::pair<Matrix, Matrix> split_latent(const Matrix& latent, std::size_t lncrna_count) {
  if (lncrna_count > latent.rows()) {
    throw std::invalid_argument("split_latent: lncrna_count exceeds latent rows");
  }
  return {slice_rows(latent, 0, lncrna_count), slice_rows(latent, lncrna_count, latent.rows())};
}

const char* feature_arm_name(FeatureArm arm) {
  switch (arm) {
    case FeatureArm::Fused: return "fused";
    case FeatureArm::LinearOnly: return "linear_only";
    case FeatureArm::NonlinearOnly: return "nonlinear_only";
  }
  return "?";
}

std::vector<double> fuse(std::size_t lnc, std::size_t dis, const FeatureBundle& features,
                         FeatureArm arm) {
  if (lnc >= features.fl.rows() || dis >= features.fd.rows()) {
    throw std::invalid_argument("fuse: pair index out of range");
  }
  if (features.fl_nl.rows() != features.fl.rows() || features.fd_nl.rows() != features.fd.rows()) {
    throw std::invalid_argument("fuse: feature row counts disagree");
  }
  const bool keep_linear = arm != FeatureArm::NonlinearOnly;
  const bool keep_nonlinear = arm != FeatureArm::LinearOnly;
  std::vector<double> out;
  out.reserve(features.pair_dim());
  auto append = [&out](std::span<const double> row, bool keep) {
    if (keep) {
      out.insert(out.end(), row.begin(), row.end());
    } else {
      out.insert(out.end(), row.size(), 0.0);
    }
  };
  append(features.fl.row(lnc), keep_linear);
  append(features.fl_nl.row(lnc), keep_nonlinear);
  append(features.fd.row(dis), keep_linear);
  append(features.fd_nl.row(dis), keep_nonlinear);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> sample_negatives(
    const AssociationMatrix& ld, std::size_t count, SeededRng& rng,
    std::span<const std::pair<std::size_t, std::size_t>> excluded) {
  std::set<std::pair<std::size_t, std::size_t>> skip(excluded.begin(), excluded.end());
  std::vector<std::pair<std::size_t, std::size_t>> pool;
  for (std::size_t i = 0; i < ld.rows(); ++i) {
    for (std::size_t j = 0; j < ld.cols(); ++j) {
      if (!ld.get(i, j) && !skip.count({i, j})) pool.emplace_back(i, j);
    }
  }
  if (count > pool.size()) {
    throw InputError("sample_negatives: requested " + std::to_string(count) +
                     " negatives but only " + std::to_string(pool.size()) +
                     " unknown pairs are available");
  }
  // partial Fisher-Yates: the first `count` slots become the sample
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.uniform_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

void PairSet::validate(std::size_t lncrna_count, std::size_t disease_count) const {
  std::set<std::pair<std::size_t, std::size_t>> pos(positives.begin(), positives.end());
  for (const auto& pr : negatives) {
    if (pos.count(pr)) {
      throw std::invalid_argument("PairSet: pair (" + std::to_string(pr.first) + "," +
                                  std::to_string(pr.second) + ") is both positive and negative");
    }
  }
  auto in_range = [&](const std::pair<std::size_t, std::size_t>& pr) {
    return pr.first < lncrna_count && pr.second < disease_count;
  };
  for (const auto& pr : positives)
    if (!in_range(pr)) throw std::invalid_argument("PairSet: positive index out of range");
  for (const auto& pr : negatives)
    if (!in_range(pr)) throw std::invalid_argument("PairSet: negative index out of range");
}

TrainingSet build_training_set(const PairSet& pairs, const FeatureBundle& features,
                               FeatureArm arm) {
  TrainingSet set;
  set.inputs = Matrix(pairs.positives.size() + pairs.negatives.size(), features.pair_dim());
  set.labels.reserve(set.inputs.rows());
  std::size_t row = 0;
  for (const auto& [i, j] : pairs.positives) {
    const auto v = fuse(i, j, features, arm);
    std::copy(v.begin(), v.end(), set.inputs.row(row++).begin());
    set.labels.push_back(1);
  }
  for (const auto& [i, j] : pairs.negatives) {
    const auto v = fuse(i, j, features, arm);
    std::copy(v.begin(), v.end(), set.inputs.row(row++).begin());
    set.labels.push_back(0);
  }
  return set;
}

namespace {

void check_classifier_config(const ClassifierConfig& cfg) {
  if (!(cfg.leaky_slope > 0.0 && cfg.leaky_slope < 1.0))
    throw std::invalid_argument("classifier: leaky_slope must lie in (0,1)");
  if (cfg.dropout < 0.0 || cfg.dropout >= 1.0)
    throw std::invalid_argument("classifier: dropout must lie in [0,1)");
  if (cfg.epochs < 1) throw std::invalid_argument("classifier: epochs must be >= 1");
  if (!(cfg.learning_rate > 0.0))
    throw std::invalid_argument("classifier: learning_rate must be > 0");
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

struct ForwardPass {
  std::vector<Matrix> activations;  // input + each hidden activation (post-dropout)
  std::vector<Matrix> preacts;      // hidden pre-activations
  std::vector<double> logits;
};

/// dropout_masks: one per hidden layer (already scaled by 1/(1-alpha)), or
/// empty for evaluation.
ForwardPass forward_pass(const ClassifierModel& model, const Matrix& inputs,
                         const std::vector<Matrix>& dropout_masks) {
  ForwardPass fp;
  fp.activations.push_back(inputs);
  for (std::size_t li = 0; li < model.hidden.size(); ++li) {
    const DenseLayer& layer = model.hidden[li];
    Matrix z = matmul(fp.activations.back(), transpose(layer.weights));
    for (std::size_t i = 0; i < z.rows(); ++i) {
      auto row = z.row(i);
      for (std::size_t c = 0; c < row.size(); ++c) row[c] += layer.bias(c, 0);
    }
    Matrix act = leaky_relu(z, model.leaky_slope);
    if (!dropout_masks.empty()) {
      auto a = act.flat();
      auto m = dropout_masks[li].flat();
      for (std::size_t idx = 0; idx < a.size(); ++idx) a[idx] *= m[idx];
    }
    fp.preacts.push_back(std::move(z));
    fp.activations.push_back(std::move(act));
  }
  const Matrix& last = fp.activations.back();
  fp.logits.resize(last.rows());
  for (std::size_t i = 0; i < last.rows(); ++i) {
    double z = model.output.bias(0, 0);
    auto row = last.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) z += model.output.weights(0, c) * row[c];
    fp.logits[i] = z;
  }
  return fp;
}

double bce_from_logits(const std::vector<double>& logits, const std::vector<int>& labels) {
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    sum += softplus(logits[i]) - static_cast<double>(labels[i]) * logits[i];
  }
  return sum / static_cast<double>(logits.size());
}

ClassifierGradients zero_gradients(const ClassifierModel& model) {
  ClassifierGradients g;
  for (const auto& layer : model.hidden) {
    g.hidden.push_back({Matrix(layer.weights.rows(), layer.weights.cols()),
                        Matrix(layer.bias.rows(), 1)});
  }
  g.output = {Matrix(model.output.weights.rows(), model.output.weights.cols()), Matrix(1, 1)};
  return g;
}

/// Backward pass for mean BCE; masks must match the ones used forward.
ClassifierGradients backward_pass(const ClassifierModel& model, const ForwardPass& fp,
                                  const std::vector<int>& labels,
                                  const std::vector<Matrix>& dropout_masks) {
  ClassifierGradients grads = zero_gradients(model);
  const std::size_t batch = fp.logits.size();

  // d(mean BCE)/d(logit_i) = (sigmoid(logit_i) - y_i) / batch
  Matrix grad_act(batch, model.output.weights.cols());
  for (std::size_t i = 0; i < batch; ++i) {
    const double dlogit = (sigmoid(fp.logits[i]) - static_cast<double>(labels[i])) /
                          static_cast<double>(batch);
    grads.output.bias(0, 0) += dlogit;
    auto a = fp.activations.back().row(i);
    auto ga = grad_act.row(i);
    for (std::size_t c = 0; c < a.size(); ++c) {
      grads.output.weights(0, c) += dlogit * a[c];
      ga[c] = dlogit * model.output.weights(0, c);
    }
  }

  for (std::size_t li = model.hidden.size(); li-- > 0;) {
    if (!dropout_masks.empty()) {
      auto ga = grad_act.flat();
      auto m = dropout_masks[li].flat();
      for (std::size_t idx = 0; idx < ga.size(); ++idx) ga[idx] *= m[idx];
    }
    {
      auto ga = grad_act.flat();
      auto z = fp.preacts[li].flat();
      for (std::size_t idx = 0; idx < ga.size(); ++idx)
        ga[idx] *= leaky_relu_deriv(z[idx], model.leaky_slope);
    }
    // z = x W^T + b
    Matrix gw = matmul(transpose(grad_act), fp.activations[li]);
    auto acc = grads.hidden[li].weights.flat();
    auto add = gw.flat();
    for (std::size_t idx = 0; idx < acc.size(); ++idx) acc[idx] += add[idx];
    for (std::size_t i = 0; i < grad_act.rows(); ++i) {
      auto row = grad_act.row(i);
      for (std::size_t c = 0; c < row.size(); ++c) grads.hidden[li].bias(c, 0) += row[c];
    }
    grad_act = matmul(grad_act, model.hidden[li].weights);
  }
  return grads;
}

}  // namespace

ClassifierModel init_classifier(std::size_t input_dim, const ClassifierConfig& cfg,
                                SeededRng& rng) {
  check_classifier_config(cfg);
  if (input_dim == 0) throw std::invalid_argument("classifier: input_dim must be positive");
  ClassifierModel model;
  model.leaky_slope = cfg.leaky_slope;
  std::size_t in = input_dim;
  auto make_layer = [&](std::size_t out) {
    DenseLayer layer{Matrix(out, in), Matrix(out, 1)};
    if (!cfg.zero_init) {
      // fan-in scaled uniform weights, zero biases
      const double bound = 1.0 / std::sqrt(static_cast<double>(in));
      for (double& v : layer.weights.flat()) v = rng.uniform(-bound, bound);
    }
    in = out;
    return layer;
  };
  for (std::size_t width : cfg.hidden_dims) {
    if (width == 0) throw std::invalid_argument("classifier: zero layer width");
    model.hidden.push_back(make_layer(width));
  }
  model.output = make_layer(1);
  return model;
}

double classifier_loss(const ClassifierModel& model, const Matrix& inputs,
                       const std::vector<int>& labels) {
  if (inputs.rows() != labels.size()) {
    throw std::invalid_argument("classifier_loss: inputs/labels size mismatch");
  }
  return bce_from_logits(forward_pass(model, inputs, {}).logits, labels);
}

ClassifierGradients classifier_gradients(const ClassifierModel& model, const Matrix& inputs,
                                         const std::vector<int>& labels) {
  if (inputs.rows() != labels.size()) {
    throw std::invalid_argument("classifier_gradients: inputs/labels size mismatch");
  }
  const ForwardPass fp = forward_pass(model, inputs, {});
  return backward_pass(model, fp, labels, {});
}

ClassifierModel train_classifier(const ClassifierConfig& cfg, const TrainingSet& data,
                                 SeededRng& rng) {
  check_classifier_config(cfg);
  if (data.inputs.rows() != data.labels.size()) {
    throw std::invalid_argument("train_classifier: inputs/labels size mismatch");
  }
  if (data.labels.empty()) throw InputError("train_classifier: empty training set");
  const bool has_pos = std::find(data.labels.begin(), data.labels.end(), 1) != data.labels.end();
  const bool has_neg = std::find(data.labels.begin(), data.labels.end(), 0) != data.labels.end();
  if (!has_pos || !has_neg) {
    throw InputError("train_classifier: training set must contain both classes");
  }

  ClassifierModel model = init_classifier(data.inputs.cols(), cfg, rng);

  AdamConfig adam_cfg;
  adam_cfg.learning_rate = cfg.learning_rate;
  std::vector<std::pair<AdamState, AdamState>> hidden_states;
  for (const auto& layer : model.hidden) {
    hidden_states.emplace_back(AdamState(layer.weights.rows(), layer.weights.cols(), adam_cfg),
                               AdamState(layer.bias.rows(), 1, adam_cfg));
  }
  AdamState out_w_state(model.output.weights.rows(), model.output.weights.cols(), adam_cfg);
  AdamState out_b_state(1, 1, adam_cfg);

  const std::size_t batch = data.inputs.rows();
  const double keep = 1.0 - cfg.dropout;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<Matrix> masks;
    if (cfg.dropout > 0.0) {
      for (const auto& layer : model.hidden) {
        Matrix mask(batch, layer.weights.rows());
        for (double& v : mask.flat()) v = rng.uniform() < cfg.dropout ? 0.0 : 1.0 / keep;
        masks.push_back(std::move(mask));
      }
    }
    try {
      const ForwardPass fp = forward_pass(model, data.inputs, masks);
      const double loss = bce_from_logits(fp.logits, data.labels);
      if (!std::isfinite(loss)) throw NumericError("non-finite loss");
      const ClassifierGradients grads = backward_pass(model, fp, data.labels, masks);
      for (std::size_t li = 0; li < model.hidden.size(); ++li) {
        hidden_states[li].first.step(model.hidden[li].weights, grads.hidden[li].weights);
        hidden_states[li].second.step(model.hidden[li].bias, grads.hidden[li].bias);
      }
      out_w_state.step(model.output.weights, grads.output.weights);
      out_b_state.step(model.output.bias, grads.output.bias);
    } catch (const NumericError& e) {
      throw NumericError("classifier training diverged at epoch " + std::to_string(epoch) +
                         " (" + e.what() + ")");
    }
  }
  return model;
}

double predict(const ClassifierModel& model, std::span<const double> input) {
  if (input.size() != model.input_dim()) {
    throw std::invalid_argument("predict: input length " + std::to_string(input.size()) +
                                " != model input dim " + std::to_string(model.input_dim()));
  }
  Matrix row(1, input.size());
  std::copy(input.begin(), input.end(), row.row(0).begin());
  const ForwardPass fp = forward_pass(model, row, {});
  return sigmoid(fp.logits[0]);
}

std::vector<double> predict_batch(const ClassifierModel& model, const Matrix& inputs) {
  if (inputs.cols() != model.input_dim()) {
    throw std::invalid_argument("predict_batch: input dim mismatch");
  }
  const ForwardPass fp = forward_pass(model, inputs, {});
  std::vector<double> scores(fp.logits.size());
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = sigmoid(fp.logits[i]);
  return scores;
}

}  // namespace hgatelda

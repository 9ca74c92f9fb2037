#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hgatelda/adam.hpp"
#include "hgatelda/associations.hpp"
#include "hgatelda/matrix.hpp"
#include "hgatelda/rng.hpp"

namespace hgatelda {

/// Bipartite lncRNA-disease graph over the stacked node index convention
/// (lncRNAs 0..p-1, diseases p..p+q-1). Every node carries a self-loop, so no
/// neighborhood is ever empty; there are no lncRNA-lncRNA or disease-disease
/// edges.
class AttentionGraph {
 public:
  static AttentionGraph from_ld(const AssociationMatrix& ld);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t lncrna_count() const { return p_; }
  std::size_t disease_count() const { return q_; }

  std::span<const std::size_t> neighbors(std::size_t node) const {
    return {neighbors_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }

  /// Total directed neighbor entries (= 2*ones(LD) + p + q).
  std::size_t entry_count() const { return neighbors_.size(); }
  /// Offset of node's first entry in edge-aligned arrays.
  std::size_t entry_offset(std::size_t node) const { return offsets_[node]; }
  std::size_t neighbor_at(std::size_t entry) const { return neighbors_[entry]; }

 private:
  std::size_t p_ = 0, q_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> neighbors_;
};

inline AttentionGraph build_graph(const AssociationMatrix& ld) {
  return AttentionGraph::from_ld(ld);
}

/// One multi-head attention layer: per-head projection W^k (out x in) and
/// attention vector a^k (2*out x 1, source half first).
struct AttentionLayerParams {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<Matrix> weights;
  std::vector<Matrix> attention;

  std::size_t head_count() const { return weights.size(); }
};

struct GateConfig {
  std::vector<std::size_t> encoder_dims{128, 64};
  std::size_t heads = 4;
  double learning_rate = 1e-3;
  std::size_t epochs = 300;
  double leaky_slope = 0.2;
};

/// Encoder/decoder stacks; decoder dims mirror the encoder in reverse so the
/// final output dimension equals the input feature dimension.
struct GateModel {
  std::vector<AttentionLayerParams> encoder;
  std::vector<AttentionLayerParams> decoder;
  double leaky_slope = 0.2;

  std::size_t input_dim() const { return encoder.front().in_dim; }
  std::size_t latent_dim() const { return encoder.back().out_dim; }
};

/// Seeded uniform init in +-sqrt(6/(fan_in+fan_out)).
GateModel init_gate_model(std::size_t input_dim, const GateConfig& cfg, SeededRng& rng);

/// Values aligned with the graph's directed neighbor entries.
using EdgeValues = std::vector<double>;

/// z_ij = leakyReLU(a . [W f_i || W f_j]) for every entry (i -> j).
EdgeValues attention_scores(const AttentionLayerParams& layer, const Matrix& features,
                            const AttentionGraph& g, std::size_t head, double slope);

/// Per-neighborhood softmax of the scores.
EdgeValues normalize_attention(const EdgeValues& scores, const AttentionGraph& g);

/// Single-head aggregation with the activation applied.
Matrix head_forward(const AttentionLayerParams& layer, const Matrix& features,
                    const AttentionGraph& g, std::size_t head, double slope);

/// Head-averaged aggregation with one activation at the end (the average sits
/// inside the activation).
Matrix layer_forward(const AttentionLayerParams& layer, const Matrix& features,
                     const AttentionGraph& g, double slope);

/// Intermediates cached by the forward pass for the analytic backward pass.
struct LayerCache {
  Matrix input;
  std::vector<Matrix> head_projected;  // per head: N x out, rows W f_i
  std::vector<EdgeValues> head_preact; // per head: attention input before its lrelu
  std::vector<EdgeValues> head_coeff;  // per head: softmaxed coefficients
  Matrix preactivation;                // head average before the output lrelu
  Matrix output;
};

struct GateForwardCache {
  std::vector<LayerCache> layers;  // encoder layers then decoder layers
  Matrix latent;
  Matrix reconstruction;
};

GateForwardCache gate_forward(const GateModel& model, const Matrix& features,
                              const AttentionGraph& g);

/// Mean squared error over all entries.
double reconstruction_loss(const Matrix& original, const Matrix& reconstruction);

/// Parameter gradients, same shapes as the model.
struct GateGradients {
  std::vector<AttentionLayerParams> encoder;
  std::vector<AttentionLayerParams> decoder;
};

/// Analytic gradients of reconstruction_loss w.r.t. every W^k and a^k.
GateGradients gate_backward(const GateModel& model, const GateForwardCache& cache,
                            const Matrix& features, const AttentionGraph& g);

struct GateTrainResult {
  GateModel model;
  Matrix latent;  // nonlinear node features F', (p+q) x latent_dim
  std::vector<double> loss_history;
};

/// Full-batch Adam training of the auto-encoder; deterministic given the rng
/// seed. Throws NumericError naming the epoch if the loss goes non-finite.
GateTrainResult train_gate(const GateConfig& cfg, const Matrix& features,
                           const AttentionGraph& g, SeededRng& rng);

}  // namespace hgatelda

#include "hgatelda/gate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hgatelda/errors.hpp"

namespace hgatelda {

AttentionGraph AttentionGraph::from_ld(const AssociationMatrix& ld) {
  if (ld.role() != AssociationRole::LD) {
    throw std::invalid_argument("AttentionGraph: expects an LD matrix");
  }
  AttentionGraph g;
  g.p_ = ld.rows();
  g.q_ = ld.cols();
  const std::size_t n = g.p_ + g.q_;
  g.offsets_.assign(n + 1, 0);
  g.neighbors_.clear();
  for (std::size_t node = 0; node < n; ++node) {
    g.neighbors_.push_back(node);  // self-loop first
    if (node < g.p_) {
      for (std::size_t j = 0; j < g.q_; ++j) {
        if (ld.get(node, j)) g.neighbors_.push_back(g.p_ + j);
      }
    } else {
      const std::size_t j = node - g.p_;
      for (std::size_t i = 0; i < g.p_; ++i) {
        if (ld.get(i, j)) g.neighbors_.push_back(i);
      }
    }
    g.offsets_[node + 1] = g.neighbors_.size();
  }
  return g;
}

namespace {

void check_gate_config(const GateConfig& cfg) {
  if (cfg.encoder_dims.empty()) throw std::invalid_argument("gate: encoder_dims must be nonempty");
  for (std::size_t d : cfg.encoder_dims)
    if (d == 0) throw std::invalid_argument("gate: zero layer width");
  if (cfg.heads < 1) throw std::invalid_argument("gate: heads must be >= 1");
  if (!(cfg.leaky_slope > 0.0 && cfg.leaky_slope < 1.0))
    throw std::invalid_argument("gate: leaky_slope must lie in (0,1)");
  if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("gate: learning_rate must be > 0");
}

Matrix uniform_matrix(std::size_t rows, std::size_t cols, double bound, SeededRng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.flat()) v = rng.uniform(-bound, bound);
  return m;
}

AttentionLayerParams init_layer(std::size_t in_dim, std::size_t out_dim, std::size_t heads,
                                SeededRng& rng) {
  AttentionLayerParams layer;
  layer.in_dim = in_dim;
  layer.out_dim = out_dim;
  const double w_bound = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
  const double a_bound = std::sqrt(6.0 / static_cast<double>(2 * out_dim + 1));
  for (std::size_t k = 0; k < heads; ++k) {
    layer.weights.push_back(uniform_matrix(out_dim, in_dim, w_bound, rng));
    layer.attention.push_back(uniform_matrix(2 * out_dim, 1, a_bound, rng));
  }
  return layer;
}

AttentionLayerParams zero_like(const AttentionLayerParams& layer) {
  AttentionLayerParams z;
  z.in_dim = layer.in_dim;
  z.out_dim = layer.out_dim;
  for (std::size_t k = 0; k < layer.head_count(); ++k) {
    z.weights.emplace_back(layer.out_dim, layer.in_dim);
    z.attention.emplace_back(2 * layer.out_dim, 1);
  }
  return z;
}

/// h = X W^T (rows h_i = W x_i).
Matrix project(const Matrix& x, const Matrix& w) { return matmul(x, transpose(w)); }

/// Attention inputs u_ij = a_src.h_i + a_dst.h_j per directed entry.
EdgeValues edge_preactivations(const Matrix& projected, const Matrix& attention,
                               const AttentionGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t out = projected.cols();
  std::vector<double> src(n, 0.0), dst(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto h = projected.row(i);
    double s = 0.0, t = 0.0;
    for (std::size_t c = 0; c < out; ++c) {
      s += attention(c, 0) * h[c];
      t += attention(out + c, 0) * h[c];
    }
    src[i] = s;
    dst[i] = t;
  }
  EdgeValues u(g.entry_count());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t begin = g.entry_offset(i);
    const auto nbrs = g.neighbors(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) u[begin + k] = src[i] + dst[nbrs[k]];
  }
  return u;
}

EdgeValues softmax_per_node(const EdgeValues& z, const AttentionGraph& g) {
  EdgeValues coeff = z;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const std::size_t begin = g.entry_offset(i);
    const std::size_t len = g.entry_offset(i + 1) - begin;
    stable_softmax_inplace(std::span<double>(coeff.data() + begin, len));
  }
  return coeff;
}

void check_layer_input(const AttentionLayerParams& layer, const Matrix& features,
                       const AttentionGraph& g) {
  if (features.cols() != layer.in_dim) {
    throw std::invalid_argument("gate layer: feature dim " + std::to_string(features.cols()) +
                                " != layer in_dim " + std::to_string(layer.in_dim));
  }
  if (features.rows() != g.node_count()) {
    throw std::invalid_argument("gate layer: " + std::to_string(features.rows()) +
                                " feature rows for " + std::to_string(g.node_count()) + " nodes");
  }
}

/// Aggregation m_i = sum_{t in N_i} coeff_it h_t for one head.
Matrix aggregate(const Matrix& projected, const EdgeValues& coeff, const AttentionGraph& g) {
  Matrix m(projected.rows(), projected.cols());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const std::size_t begin = g.entry_offset(i);
    const auto nbrs = g.neighbors(i);
    auto out_row = m.row(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const double c = coeff[begin + k];
      auto h = projected.row(nbrs[k]);
      for (std::size_t d = 0; d < h.size(); ++d) out_row[d] += c * h[d];
    }
  }
  return m;
}

LayerCache run_layer(const AttentionLayerParams& layer, const Matrix& features,
                     const AttentionGraph& g, double slope) {
  check_layer_input(layer, features, g);
  LayerCache cache;
  cache.input = features;
  const std::size_t heads = layer.head_count();
  Matrix sum(features.rows(), layer.out_dim);
  for (std::size_t k = 0; k < heads; ++k) {
    Matrix h = project(features, layer.weights[k]);
    EdgeValues u = edge_preactivations(h, layer.attention[k], g);
    EdgeValues z(u.size());
    for (std::size_t e = 0; e < u.size(); ++e) z[e] = u[e] >= 0.0 ? u[e] : slope * u[e];
    EdgeValues coeff = softmax_per_node(z, g);
    Matrix m = aggregate(h, coeff, g);
    auto acc = sum.flat();
    auto add = m.flat();
    for (std::size_t idx = 0; idx < acc.size(); ++idx) acc[idx] += add[idx];
    cache.head_projected.push_back(std::move(h));
    cache.head_preact.push_back(std::move(u));
    cache.head_coeff.push_back(std::move(coeff));
  }
  const double inv_heads = 1.0 / static_cast<double>(heads);
  for (double& v : sum.flat()) v *= inv_heads;
  cache.preactivation = std::move(sum);
  cache.output = leaky_relu(cache.preactivation, slope);
  return cache;
}

/// Backward through one layer; returns the gradient w.r.t. the layer input
/// and accumulates parameter gradients into grads.
Matrix backward_layer(const AttentionLayerParams& layer, const LayerCache& cache,
                      const AttentionGraph& g, double slope, const Matrix& grad_output,
                      AttentionLayerParams& grads) {
  const std::size_t n = g.node_count();
  const std::size_t out = layer.out_dim;
  const std::size_t heads = layer.head_count();

  // through the output activation
  Matrix grad_pre = grad_output;
  {
    auto gp = grad_pre.flat();
    auto pre = cache.preactivation.flat();
    for (std::size_t idx = 0; idx < gp.size(); ++idx)
      gp[idx] *= leaky_relu_deriv(pre[idx], slope);
  }
  const double inv_heads = 1.0 / static_cast<double>(heads);

  Matrix grad_input(cache.input.rows(), layer.in_dim);
  for (std::size_t k = 0; k < heads; ++k) {
    const Matrix& h = cache.head_projected[k];
    const EdgeValues& u = cache.head_preact[k];
    const EdgeValues& coeff = cache.head_coeff[k];
    const Matrix& a = layer.attention[k];

    Matrix grad_h(n, out);
    EdgeValues grad_coeff(u.size());

    // aggregation backward: m_i = sum coeff_e h_j
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t begin = g.entry_offset(i);
      const auto nbrs = g.neighbors(i);
      for (std::size_t e = 0; e < nbrs.size(); ++e) {
        const std::size_t j = nbrs[e];
        double dot = 0.0;
        auto gm = grad_pre.row(i);
        auto hj = h.row(j);
        auto gh = grad_h.row(j);
        const double c = coeff[begin + e];
        for (std::size_t d = 0; d < out; ++d) {
          const double gmd = inv_heads * gm[d];
          dot += gmd * hj[d];
          gh[d] += c * gmd;
        }
        grad_coeff[begin + e] = dot;
      }
    }

    // softmax and attention-lrelu backward per neighborhood
    std::vector<double> grad_src(n, 0.0), grad_dst(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t begin = g.entry_offset(i);
      const auto nbrs = g.neighbors(i);
      double weighted = 0.0;
      for (std::size_t e = 0; e < nbrs.size(); ++e)
        weighted += coeff[begin + e] * grad_coeff[begin + e];
      for (std::size_t e = 0; e < nbrs.size(); ++e) {
        const double dz = coeff[begin + e] * (grad_coeff[begin + e] - weighted);
        const double du = dz * leaky_relu_deriv(u[begin + e], slope);
        grad_src[i] += du;
        grad_dst[nbrs[e]] += du;
      }
    }

    // u_ij = a_src.h_i + a_dst.h_j
    Matrix& grad_a = grads.attention[k];
    for (std::size_t i = 0; i < n; ++i) {
      auto hi = h.row(i);
      auto gh = grad_h.row(i);
      for (std::size_t d = 0; d < out; ++d) {
        grad_a(d, 0) += grad_src[i] * hi[d];
        grad_a(out + d, 0) += grad_dst[i] * hi[d];
        gh[d] += grad_src[i] * a(d, 0) + grad_dst[i] * a(out + d, 0);
      }
    }

    // h = X W^T
    Matrix gw = matmul(transpose(grad_h), cache.input);
    auto acc_w = grads.weights[k].flat();
    auto add_w = gw.flat();
    for (std::size_t idx = 0; idx < acc_w.size(); ++idx) acc_w[idx] += add_w[idx];

    Matrix gx = matmul(grad_h, layer.weights[k]);
    auto acc_x = grad_input.flat();
    auto add_x = gx.flat();
    for (std::size_t idx = 0; idx < acc_x.size(); ++idx) acc_x[idx] += add_x[idx];
  }
  return grad_input;
}

}  // namespace

GateModel init_gate_model(std::size_t input_dim, const GateConfig& cfg, SeededRng& rng) {
  check_gate_config(cfg);
  if (input_dim == 0) throw std::invalid_argument("gate: input_dim must be positive");
  GateModel model;
  model.leaky_slope = cfg.leaky_slope;
  std::size_t in = input_dim;
  for (std::size_t width : cfg.encoder_dims) {
    model.encoder.push_back(init_layer(in, width, cfg.heads, rng));
    in = width;
  }
  // decoder widths mirror the encoder chain in reverse, ending at input_dim
  std::vector<std::size_t> dec_dims(cfg.encoder_dims.rbegin() + 1, cfg.encoder_dims.rend());
  dec_dims.push_back(input_dim);
  for (std::size_t width : dec_dims) {
    model.decoder.push_back(init_layer(in, width, cfg.heads, rng));
    in = width;
  }
  return model;
}

EdgeValues attention_scores(const AttentionLayerParams& layer, const Matrix& features,
                            const AttentionGraph& g, std::size_t head, double slope) {
  check_layer_input(layer, features, g);
  if (head >= layer.head_count()) throw std::invalid_argument("attention_scores: bad head");
  const Matrix h = project(features, layer.weights[head]);
  EdgeValues u = edge_preactivations(h, layer.attention[head], g);
  for (double& v : u) v = v >= 0.0 ? v : slope * v;
  return u;
}

EdgeValues normalize_attention(const EdgeValues& scores, const AttentionGraph& g) {
  if (scores.size() != g.entry_count()) {
    throw std::invalid_argument("normalize_attention: score count mismatch");
  }
  return softmax_per_node(scores, g);
}

Matrix head_forward(const AttentionLayerParams& layer, const Matrix& features,
                    const AttentionGraph& g, std::size_t head, double slope) {
  check_layer_input(layer, features, g);
  if (head >= layer.head_count()) throw std::invalid_argument("head_forward: bad head");
  const Matrix h = project(features, layer.weights[head]);
  EdgeValues u = edge_preactivations(h, layer.attention[head], g);
  for (double& v : u) v = v >= 0.0 ? v : slope * v;
  const EdgeValues coeff = softmax_per_node(u, g);
  return leaky_relu(aggregate(h, coeff, g), slope);
}

Matrix layer_forward(const AttentionLayerParams& layer, const Matrix& features,
                     const AttentionGraph& g, double slope) {
  return run_layer(layer, features, g, slope).output;
}

GateForwardCache gate_forward(const GateModel& model, const Matrix& features,
                              const AttentionGraph& g) {
  GateForwardCache cache;
  const Matrix* current = &features;
  for (const auto& layer : model.encoder) {
    cache.layers.push_back(run_layer(layer, *current, g, model.leaky_slope));
    current = &cache.layers.back().output;
  }
  cache.latent = *current;
  for (const auto& layer : model.decoder) {
    cache.layers.push_back(run_layer(layer, *current, g, model.leaky_slope));
    current = &cache.layers.back().output;
  }
  cache.reconstruction = *current;
  return cache;
}

double reconstruction_loss(const Matrix& original, const Matrix& reconstruction) {
  return mean_squared_error(original, reconstruction);
}

GateGradients gate_backward(const GateModel& model, const GateForwardCache& cache,
                            const Matrix& features, const AttentionGraph& g) {
  GateGradients grads;
  for (const auto& layer : model.encoder) grads.encoder.push_back(zero_like(layer));
  for (const auto& layer : model.decoder) grads.decoder.push_back(zero_like(layer));

  // d(MSE)/d(recon)
  Matrix grad(cache.reconstruction.rows(), cache.reconstruction.cols());
  {
    const double scale = 2.0 / static_cast<double>(cache.reconstruction.size());
    auto gr = grad.flat();
    auto rec = cache.reconstruction.flat();
    auto orig = features.flat();
    for (std::size_t i = 0; i < gr.size(); ++i) gr[i] = scale * (rec[i] - orig[i]);
  }

  const std::size_t enc = model.encoder.size();
  for (std::size_t idx = model.decoder.size(); idx-- > 0;) {
    grad = backward_layer(model.decoder[idx], cache.layers[enc + idx], g, model.leaky_slope,
                          grad, grads.decoder[idx]);
  }
  for (std::size_t idx = enc; idx-- > 0;) {
    grad = backward_layer(model.encoder[idx], cache.layers[idx], g, model.leaky_slope, grad,
                          grads.encoder[idx]);
  }
  return grads;
}

GateTrainResult train_gate(const GateConfig& cfg, const Matrix& features,
                           const AttentionGraph& g, SeededRng& rng) {
  check_gate_config(cfg);
  if (cfg.epochs < 1) throw std::invalid_argument("gate: epochs must be >= 1");
  if (!features.all_finite()) throw NumericError("gate: non-finite input features");

  GateTrainResult result;
  result.model = init_gate_model(features.cols(), cfg, rng);

  AdamConfig adam_cfg;
  adam_cfg.learning_rate = cfg.learning_rate;
  std::vector<std::vector<AdamState>> enc_w_states, enc_a_states, dec_w_states, dec_a_states;
  auto make_states = [&](const std::vector<AttentionLayerParams>& layers,
                         std::vector<std::vector<AdamState>>& w_states,
                         std::vector<std::vector<AdamState>>& a_states) {
    for (const auto& layer : layers) {
      std::vector<AdamState> ws, as;
      for (std::size_t k = 0; k < layer.head_count(); ++k) {
        ws.emplace_back(layer.out_dim, layer.in_dim, adam_cfg);
        as.emplace_back(2 * layer.out_dim, 1, adam_cfg);
      }
      w_states.push_back(std::move(ws));
      a_states.push_back(std::move(as));
    }
  };
  make_states(result.model.encoder, enc_w_states, enc_a_states);
  make_states(result.model.decoder, dec_w_states, dec_a_states);

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    try {
      GateForwardCache cache = gate_forward(result.model, features, g);
      const double loss = reconstruction_loss(features, cache.reconstruction);
      if (!std::isfinite(loss)) throw NumericError("non-finite loss");
      result.loss_history.push_back(loss);
      GateGradients grads = gate_backward(result.model, cache, features, g);
      auto update = [&](std::vector<AttentionLayerParams>& layers,
                        std::vector<AttentionLayerParams>& layer_grads,
                        std::vector<std::vector<AdamState>>& w_states,
                        std::vector<std::vector<AdamState>>& a_states) {
        for (std::size_t li = 0; li < layers.size(); ++li) {
          for (std::size_t k = 0; k < layers[li].head_count(); ++k) {
            w_states[li][k].step(layers[li].weights[k], layer_grads[li].weights[k]);
            a_states[li][k].step(layers[li].attention[k], layer_grads[li].attention[k]);
          }
        }
      };
      update(result.model.encoder, grads.encoder, enc_w_states, enc_a_states);
      update(result.model.decoder, grads.decoder, dec_w_states, dec_a_states);
    } catch (const NumericError& e) {
      throw NumericError("gate training diverged at epoch " + std::to_string(epoch) + " (" +
                         e.what() + ")");
    }
  }

  result.latent = gate_forward(result.model, features, g).latent;
  return result;
}

}  // namespace hgatelda

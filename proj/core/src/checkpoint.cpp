#include "hgatelda/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hgatelda/errors.hpp"

namespace hgatelda {

namespace {

constexpr const char* kMagic = "hgatelda.checkpoint.v1";

void write_value(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

void write_matrix(std::ostream& out, const char* tag, const Matrix& m) {
  out << tag << ' ' << m.rows() << ' ' << m.cols();
  for (double v : m.flat()) {
    out << ' ';
    write_value(out, v);
  }
  out << '\n';
}

struct Reader {
  std::ifstream in;
  std::string path;

  explicit Reader(const std::string& p) : in(p), path(p) {
    if (!in) throw InputError("cannot open checkpoint: " + p);
  }

  std::string word() {
    std::string w;
    if (!(in >> w)) throw InputError("checkpoint truncated: " + path);
    return w;
  }

  std::size_t count() {
    std::size_t n = 0;
    if (!(in >> n)) throw InputError("checkpoint truncated: " + path);
    return n;
  }

  double value() {
    double v = 0;
    if (!(in >> v)) throw InputError("checkpoint truncated: " + path);
    return v;
  }

  void expect(const char* tag) {
    const std::string w = word();
    if (w != tag) {
      throw InputError("checkpoint: expected '" + std::string(tag) + "', got '" + w + "' in " +
                       path);
    }
  }

  Matrix matrix(const char* tag) {
    expect(tag);
    const std::size_t rows = count();
    const std::size_t cols = count();
    Matrix m(rows, cols);
    for (double& v : m.flat()) v = value();
    return m;
  }
};

void write_attention_stack(std::ostream& out, const char* name,
                           const std::vector<AttentionLayerParams>& layers) {
  out << name << ' ' << layers.size() << '\n';
  for (const auto& layer : layers) {
    out << "layer " << layer.in_dim << ' ' << layer.out_dim << ' ' << layer.head_count() << '\n';
    for (std::size_t k = 0; k < layer.head_count(); ++k) {
      write_matrix(out, "W", layer.weights[k]);
      write_matrix(out, "a", layer.attention[k]);
    }
  }
}

std::vector<AttentionLayerParams> read_attention_stack(Reader& r, const char* name) {
  r.expect(name);
  std::vector<AttentionLayerParams> layers(r.count());
  for (auto& layer : layers) {
    r.expect("layer");
    layer.in_dim = r.count();
    layer.out_dim = r.count();
    const std::size_t heads = r.count();
    for (std::size_t k = 0; k < heads; ++k) {
      layer.weights.push_back(r.matrix("W"));
      layer.attention.push_back(r.matrix("a"));
      if (!layer.weights.back().same_shape(Matrix(layer.out_dim, layer.in_dim)) ||
          !layer.attention.back().same_shape(Matrix(2 * layer.out_dim, 1))) {
        throw InputError("checkpoint: parameter shape disagrees with layer header in " + r.path);
      }
    }
  }
  return layers;
}

}  // namespace

void save_gate_model(const std::string& path, const GateModel& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write checkpoint: " + path);
  out << kMagic << " gate\n";
  out << "leaky_slope ";
  write_value(out, model.leaky_slope);
  out << '\n';
  write_attention_stack(out, "encoder", model.encoder);
  write_attention_stack(out, "decoder", model.decoder);
  out << "end\n";
}

GateModel load_gate_model(const std::string& path) {
  Reader r(path);
  r.expect(kMagic);
  r.expect("gate");
  GateModel model;
  r.expect("leaky_slope");
  model.leaky_slope = r.value();
  model.encoder = read_attention_stack(r, "encoder");
  model.decoder = read_attention_stack(r, "decoder");
  r.expect("end");
  return model;
}

void save_classifier_model(const std::string& path, const ClassifierModel& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write checkpoint: " + path);
  out << kMagic << " classifier\n";
  out << "leaky_slope ";
  write_value(out, model.leaky_slope);
  out << '\n';
  out << "hidden " << model.hidden.size() << '\n';
  for (const auto& layer : model.hidden) {
    write_matrix(out, "W", layer.weights);
    write_matrix(out, "b", layer.bias);
  }
  out << "output\n";
  write_matrix(out, "W", model.output.weights);
  write_matrix(out, "b", model.output.bias);
  out << "end\n";
}

ClassifierModel load_classifier_model(const std::string& path) {
  Reader r(path);
  r.expect(kMagic);
  r.expect("classifier");
  ClassifierModel model;
  r.expect("leaky_slope");
  model.leaky_slope = r.value();
  r.expect("hidden");
  const std::size_t hidden = r.count();
  for (std::size_t i = 0; i < hidden; ++i) {
    DenseLayer layer;
    layer.weights = r.matrix("W");
    layer.bias = r.matrix("b");
    model.hidden.push_back(std::move(layer));
  }
  r.expect("output");
  model.output.weights = r.matrix("W");
  model.output.bias = r.matrix("b");
  r.expect("end");
  return model;
}

}  // namespace hgatelda

#include "hgatelda/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hgatelda/errors.hpp"
#include "line_reader.hpp"

namespace hgatelda {

namespace {

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw InputError("config: expected true/false for '" + key + "', got '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InputError("config: expected a number for '" + key + "', got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InputError("config: expected a nonnegative integer for '" + key + "', got '" + value +
                     "'");
  }
  return v;
}

std::vector<std::size_t> parse_dims(const std::string& key, const std::string& value) {
  std::vector<std::size_t> dims;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = detail::trim(item);
    if (item.empty()) continue;
    dims.push_back(static_cast<std::size_t>(parse_u64(key, item)));
  }
  if (dims.empty()) throw InputError("config: '" + key + "' needs at least one width");
  return dims;
}

std::string render_dims(const std::vector<std::size_t>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims[i]);
  }
  return out;
}

std::string render_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "lncrna_list") lncrna_list = value;
  else if (key == "disease_list") disease_list = value;
  else if (key == "mirna_list") mirna_list = value;
  else if (key == "ld_edges") ld_edges = value;
  else if (key == "ml_edges") ml_edges = value;
  else if (key == "md_edges") md_edges = value;
  else if (key == "dag_edges") dag_edges = value;
  else if (key == "header") header = parse_bool(key, value);
  else if (key == "delta") delta = parse_double(key, value);
  else if (key == "seed") seed = parse_u64(key, value);
  else if (key == "k") k = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "strict") strict = parse_bool(key, value);
  else if (key == "ablation") ablation = parse_bool(key, value);
  else if (key == "top") top = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "paper_literal_init") paper_literal_init = parse_bool(key, value);
  else if (key == "paper_eq20") paper_eq20 = parse_bool(key, value);
  else if (key == "normalize_features") normalize_features = parse_bool(key, value);
  else if (key == "out_dir") out_dir = value;
  else if (key == "gate_dims") gate_dims = parse_dims(key, value);
  else if (key == "gate_heads") gate_heads = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "gate_learning_rate") gate_learning_rate = parse_double(key, value);
  else if (key == "gate_epochs") gate_epochs = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "gate_slope") gate_slope = parse_double(key, value);
  else if (key == "classifier_dims") classifier_dims = parse_dims(key, value);
  else if (key == "classifier_learning_rate") classifier_learning_rate = parse_double(key, value);
  else if (key == "classifier_epochs")
    classifier_epochs = static_cast<std::size_t>(parse_u64(key, value));
  else if (key == "classifier_dropout") classifier_dropout = parse_double(key, value);
  else if (key == "classifier_slope") classifier_slope = parse_double(key, value);
  else throw InputError("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
  RunConfig cfg;
  for (const auto& line : detail::read_data_lines(path, false)) {
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) {
      throw InputError("config: expected 'key = value' at " + path + ":" +
                       std::to_string(line.number));
    }
    const std::string key = detail::trim(std::string_view(line.text).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line.text).substr(eq + 1));
    if (key.empty()) {
      throw InputError("config: empty key at " + path + ":" + std::to_string(line.number));
    }
    cfg.apply(key, value);
  }
  return cfg;
}

PipelineConfig RunConfig::pipeline() const {
  PipelineConfig p;
  p.delta = delta;
  p.strict = strict;
  p.paper_eq20 = paper_eq20;
  p.normalize_features = normalize_features;
  p.gate.encoder_dims = gate_dims;
  p.gate.heads = gate_heads;
  p.gate.learning_rate = gate_learning_rate;
  p.gate.epochs = gate_epochs;
  p.gate.leaky_slope = gate_slope;
  p.classifier.hidden_dims = classifier_dims;
  p.classifier.learning_rate = classifier_learning_rate;
  p.classifier.epochs = classifier_epochs;
  p.classifier.dropout = classifier_dropout;
  p.classifier.leaky_slope = classifier_slope;
  p.classifier.zero_init = paper_literal_init;
  return p;
}

Dataset RunConfig::load() const {
  const std::initializer_list<std::pair<const char*, const std::string*>> paths{
      {"lncrna_list", &lncrna_list}, {"disease_list", &disease_list},
      {"mirna_list", &mirna_list},   {"ld_edges", &ld_edges},
      {"ml_edges", &ml_edges},       {"md_edges", &md_edges},
      {"dag_edges", &dag_edges}};
  std::string missing;
  for (const auto& [name, path] : paths) {
    if (path->empty()) missing += missing.empty() ? name : std::string(", ") + name;
  }
  if (!missing.empty()) throw InputError("config: missing required paths: " + missing);
  for (const auto& [name, path] : paths) {
    std::ifstream probe(*path);
    if (!probe) throw InputError("config: cannot read " + std::string(name) + " file: " + *path);
  }
  return load_dataset(lncrna_list, disease_list, mirna_list, ld_edges, ml_edges, md_edges,
                      dag_edges, header, delta);
}

std::string render_config(const RunConfig& cfg) {
  std::string out;
  auto kv = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  kv("lncrna_list", cfg.lncrna_list);
  kv("disease_list", cfg.disease_list);
  kv("mirna_list", cfg.mirna_list);
  kv("ld_edges", cfg.ld_edges);
  kv("ml_edges", cfg.ml_edges);
  kv("md_edges", cfg.md_edges);
  kv("dag_edges", cfg.dag_edges);
  kv("header", cfg.header ? "true" : "false");
  kv("delta", render_double(cfg.delta));
  kv("seed", std::to_string(cfg.seed));
  kv("k", std::to_string(cfg.k));
  kv("strict", cfg.strict ? "true" : "false");
  kv("ablation", cfg.ablation ? "true" : "false");
  kv("top", std::to_string(cfg.top));
  kv("paper_literal_init", cfg.paper_literal_init ? "true" : "false");
  kv("paper_eq20", cfg.paper_eq20 ? "true" : "false");
  kv("normalize_features", cfg.normalize_features ? "true" : "false");
  kv("out_dir", cfg.out_dir);
  kv("gate_dims", render_dims(cfg.gate_dims));
  kv("gate_heads", std::to_string(cfg.gate_heads));
  kv("gate_learning_rate", render_double(cfg.gate_learning_rate));
  kv("gate_epochs", std::to_string(cfg.gate_epochs));
  kv("gate_slope", render_double(cfg.gate_slope));
  kv("classifier_dims", render_dims(cfg.classifier_dims));
  kv("classifier_learning_rate", render_double(cfg.classifier_learning_rate));
  kv("classifier_epochs", std::to_string(cfg.classifier_epochs));
  kv("classifier_dropout", render_double(cfg.classifier_dropout));
  kv("classifier_slope", render_double(cfg.classifier_slope));
  return out;
}

void write_config_file(const std::string& path, const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write config file: " + path);
  out << render_config(cfg);
}

}  // namespace hgatelda

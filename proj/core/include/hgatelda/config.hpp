#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hgatelda/eval.hpp"

namespace hgatelda {

/// Fully resolved run configuration: data paths plus every tunable, each
/// with a documented default. Parsed from a flat `key = value` file; CLI
/// flags override file values; the merged result is echoed next to the
/// outputs so every reported number can be reproduced.
struct RunConfig {
  // data
  std::string lncrna_list, disease_list, mirna_list;
  std::string ld_edges, ml_edges, md_edges, dag_edges;
  bool header = false;

  // run
  double delta = kDefaultDelta;
  std::uint64_t seed = 7;
  std::size_t k = 5;
  bool strict = true;
  bool ablation = false;
  std::size_t top = 0;  // 0 = emit the full ranking
  bool paper_literal_init = false;
  bool paper_eq20 = false;
  bool normalize_features = false;
  std::string out_dir = "out";

  // auto-encoder
  std::vector<std::size_t> gate_dims{128, 64};
  std::size_t gate_heads = 4;
  double gate_learning_rate = 1e-3;
  std::size_t gate_epochs = 300;
  double gate_slope = 0.2;

  // classifier
  std::vector<std::size_t> classifier_dims{128, 64, 32};
  double classifier_learning_rate = 1e-3;
  std::size_t classifier_epochs = 100;
  double classifier_dropout = 0.2;
  double classifier_slope = 0.2;

  PipelineConfig pipeline() const;
  Dataset load() const;

  /// Applies one key/value pair; throws InputError on unknown keys or
  /// unparseable values.
  void apply(const std::string& key, const std::string& value);
};

RunConfig parse_config_file(const std::string& path);

/// The config in its own file format, keys in a fixed order.
std::string render_config(const RunConfig& cfg);

void write_config_file(const std::string& path, const RunConfig& cfg);

}  // namespace hgatelda

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hgatelda/eval.hpp"

namespace hgatelda {

/// Planted-block generator. lncRNAs fall into three groups (A, B, C) and
/// diseases into three (X, Y, Z with Z twice the size); the ground-truth
/// association blocks are A-X, B-Y, C-X, C-Y, a 0/1 block matrix of rank
/// exactly two. Observed associations are the blocks with a fraction of
/// entries flipped as noise. miRNA interactions mirror the groups (A-U, B-V,
/// C splits over U and V; X-U, Y-V, Z-W), which is what makes the task
/// solvable from the features, and the disease DAG is one star per disease
/// group.
struct SyntheticSpec {
  std::size_t lncrnas = 40;
  std::size_t diseases = 60;
  std::size_t mirnas = 30;
  /// Entry flip probability applied to the planted association blocks.
  double noise = 0.05;
  /// miRNA link rate inside matched groups (halved for the mixed C group).
  double within_link = 0.7;
  /// miRNA link rate everywhere else.
  double background_link = 0.05;
  std::uint64_t seed = 7;
};

struct SyntheticData {
  std::vector<std::string> lncrnas, diseases, mirnas;
  std::vector<std::pair<std::string, std::string>> ld_edges, ml_edges, md_edges, dag_edges;
};

SyntheticData make_planted_block(const SyntheticSpec& spec);

/// Writes entity lists and edge files into dir (created if needed):
/// lncrnas.tsv, diseases.tsv, mirnas.tsv, ld.tsv, ml.tsv, md.tsv, dag.tsv.
void write_synthetic(const SyntheticData& data, const std::string& dir);

/// In-memory dataset, equivalent to writing and reloading the files.
Dataset to_dataset(const SyntheticData& data, double delta = kDefaultDelta);

}  // namespace hgatelda

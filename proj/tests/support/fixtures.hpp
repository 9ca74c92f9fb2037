#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hgatelda/eval.hpp"
#include "hgatelda/rng.hpp"
#include "hgatelda/synthetic.hpp"

namespace testsupport {

/// Self-cleaning scratch directory under the system temp root.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("hgatelda_" + tag + "_" + std::to_string(counter_++));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path() const { return dir_; }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = dir_ / name;
    std::ofstream out(p);
    out << contents;
    return p.string();
  }

 private:
  static inline int counter_ = 0;
  std::filesystem::path dir_;
};

/// d1 with children d2 and d3 (the sibling DAG the hand oracles use), plus
/// an isolated d4; lncRNAs l1={d2}, l2={d3}, l3={}.
struct SiblingFixture {
  hgatelda::EntityRegistry registry{{"l1", "l2", "l3"}, {"d1", "d2", "d3", "d4"}, {"m1", "m2"}};
  hgatelda::DiseaseDag dag{4, {{1, 0}, {2, 0}}};
  hgatelda::AssociationMatrix ld{hgatelda::AssociationRole::LD, 3, 4};

  SiblingFixture() {
    ld.set(0, 1, true);  // l1 - d2
    ld.set(1, 2, true);  // l2 - d3
  }
};

/// Random DAG over n nodes: each node may gain parents among lower indices.
inline hgatelda::DiseaseDag random_dag(std::size_t n, hgatelda::SeededRng& rng,
                                       double edge_rate = 0.4) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t child = 1; child < n; ++child) {
    for (std::size_t parent = 0; parent < child; ++parent) {
      if (rng.uniform() < edge_rate) edges.emplace_back(child, parent);
    }
  }
  return hgatelda::DiseaseDag(n, edges);
}

inline hgatelda::AssociationMatrix random_ld(std::size_t p, std::size_t q,
                                             hgatelda::SeededRng& rng, double density = 0.3) {
  hgatelda::AssociationMatrix ld(hgatelda::AssociationRole::LD, p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (rng.uniform() < density) ld.set(i, j, true);
  return ld;
}

/// Small planted dataset for pipeline-level tests (fast to train on).
inline hgatelda::Dataset small_dataset(std::uint64_t seed = 7) {
  hgatelda::SyntheticSpec spec;
  spec.lncrnas = 12;
  spec.diseases = 16;
  spec.mirnas = 9;
  spec.seed = seed;
  return hgatelda::to_dataset(hgatelda::make_planted_block(spec));
}

/// Pipeline config scaled for unit tests.
inline hgatelda::PipelineConfig small_pipeline_config() {
  hgatelda::PipelineConfig cfg;
  cfg.gate.encoder_dims = {8, 4};
  cfg.gate.heads = 2;
  cfg.gate.epochs = 30;
  cfg.classifier.hidden_dims = {16, 8};
  cfg.classifier.epochs = 60;
  return cfg;
}

}  // namespace testsupport

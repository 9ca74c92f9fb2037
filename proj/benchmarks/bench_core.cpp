#include <benchmark/benchmark.h>

#include "hgatelda/eval.hpp"
#include "hgatelda/gate.hpp"
#include "hgatelda/matrix.hpp"
#include "hgatelda/rng.hpp"
#include "hgatelda/similarity.hpp"
#include "hgatelda/synthetic.hpp"

using namespace hgatelda;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, SeededRng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.flat()) v = rng.uniform(-1.0, 1.0);
  return m;
}

void BM_matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SeededRng rng(1);
  const Matrix a = random_matrix(n, n, rng);
  const Matrix b = random_matrix(n, n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matmul(a, b));
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_matmul)->Arg(64)->Arg(256);

void BM_disease_similarity(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  SeededRng rng(2);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t child = 1; child < q; ++child) {
    for (std::size_t parent = 0; parent < child; ++parent) {
      if (rng.uniform() < 4.0 / static_cast<double>(q)) edges.emplace_back(child, parent);
    }
  }
  const DiseaseDag dag(q, edges);
  for (auto _ : state) {
    benchmark::DoNotOptimize(disease_similarity(dag, 0.5));
  }
}
BENCHMARK(BM_disease_similarity)->Arg(64)->Arg(256);

void BM_lfs(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const std::size_t q = p + p / 2;
  SeededRng rng(3);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t child = 1; child < q; ++child) edges.emplace_back(child, child / 2);
  const DiseaseDag dag(q, edges);
  const SimilarityMatrix ds = disease_similarity(dag, 0.5);
  AssociationMatrix ld(AssociationRole::LD, p, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      if (rng.uniform() < 0.05) ld.set(i, j, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lncrna_functional_similarity(ds, ld));
  }
}
BENCHMARK(BM_lfs)->Arg(64)->Arg(240);

void BM_gate_epoch(benchmark::State& state) {
  SyntheticSpec spec;
  const Dataset data = to_dataset(make_planted_block(spec));
  const SimilarityMatrix lfs = lncrna_functional_similarity(data.ds, data.ld);
  const LinearFeatures linear = build_linear_features(lfs, data.ml, data.ds, data.md);
  const AttentionGraph g = build_graph(data.ld);
  GateConfig cfg;
  cfg.encoder_dims = {24, 12};
  cfg.heads = 2;
  SeededRng rng(4);
  const GateModel model = init_gate_model(linear.stacked.cols(), cfg, rng);
  for (auto _ : state) {
    const GateForwardCache cache = gate_forward(model, linear.stacked, g);
    benchmark::DoNotOptimize(gate_backward(model, cache, linear.stacked, g));
  }
}
BENCHMARK(BM_gate_epoch);

void BM_roc_auc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SeededRng rng(5);
  std::vector<int> labels(n);
  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = rng.uniform() < 0.5 ? 1 : 0;
    scores[i] = rng.uniform();
  }
  labels[0] = 1;
  labels[1] = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(roc_auc(labels, scores));
  }
}
BENCHMARK(BM_roc_auc)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();

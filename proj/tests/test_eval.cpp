#include <algorithm>
#include <cmath>
#include <set>

#include <doctest.h>

#include "hgatelda/errors.hpp"
#include "hgatelda/eval.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hgatelda;

TEST_SUITE_BEGIN("eval");

namespace {
AssociationMatrix ld_with_positives(std::size_t p, std::size_t q, std::size_t count) {
  AssociationMatrix ld(AssociationRole::LD, p, q);
  std::size_t placed = 0;
  for (std::size_t i = 0; i < p && placed < count; ++i)
    for (std::size_t j = 0; j < q && placed < count; ++j, ++placed) ld.set(i, j, true);
  return ld;
}
}  // namespace

TEST_CASE("make_folds balances sizes and partitions the positives") {
  SeededRng rng(7);
  const AssociationMatrix ld10 = ld_with_positives(5, 6, 10);
  const FoldPlan even = make_folds(ld10, 5, rng);
  for (const Fold& f : even.folds) CHECK(f.test_positives.size() == 2);

  SeededRng rng2(7);
  const AssociationMatrix ld7 = ld_with_positives(4, 5, 7);
  const FoldPlan uneven = make_folds(ld7, 5, rng2);
  std::vector<std::size_t> sizes;
  for (const Fold& f : uneven.folds) sizes.push_back(f.test_positives.size());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 1, 1, 1});
}

TEST_CASE("fold properties hold over random shapes, counts and seeds") {
  SeededRng meta(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 4 + meta.uniform_index(5);
    const std::size_t q = 4 + meta.uniform_index(5);
    AssociationMatrix ld = testsupport::random_ld(p, q, meta, 0.3);
    const std::size_t n = ld.ones();
    // the plan needs n test negatives among the zero entries
    if (n < 2 || n > p * q - n) continue;
    const std::size_t k = 2 + meta.uniform_index(n - 1);
    SeededRng rng(meta.next_u64());
    const FoldPlan plan = make_folds(ld, k, rng);

    std::set<std::pair<std::size_t, std::size_t>> seen_pos, seen_neg;
    std::size_t min_size = n, max_size = 0;
    for (const Fold& f : plan.folds) {
      min_size = std::min(min_size, f.test_positives.size());
      max_size = std::max(max_size, f.test_positives.size());
      CHECK(f.test_positives.size() == f.test_negatives.size());
      for (const auto& pr : f.test_positives) {
        CHECK(ld.get(pr.first, pr.second));
        CHECK(seen_pos.insert(pr).second);  // pairwise disjoint
      }
      for (const auto& pr : f.test_negatives) {
        CHECK(!ld.get(pr.first, pr.second));  // disjoint from all positives
        CHECK(seen_neg.insert(pr).second);    // sampled without replacement
      }
    }
    CHECK(seen_pos.size() == n);  // union covers every positive
    CHECK(max_size - min_size <= 1);
  }
}

TEST_CASE("make_folds rejects out-of-range k") {
  SeededRng rng(13);
  const AssociationMatrix ld = ld_with_positives(4, 4, 6);
  CHECK_THROWS_AS(make_folds(ld, 1, rng), InputError);
  CHECK_THROWS_AS(make_folds(ld, 7, rng), InputError);
}

TEST_CASE("metrics reproduce the derived confusion example") {
  const MetricRecord m = metrics({50, 10, 30, 10});
  CHECK(m.acc == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(m.recall == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(m.precision == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(m.f1 == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(m.mcc == doctest::Approx(1400.0 / 2400.0).epsilon(1e-12));
  CHECK(m.specificity == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(m.flags.empty());
}

TEST_CASE("the alternate Matthews denominator changes the same example") {
  const MetricRecord m = metrics({50, 10, 30, 10}, true);
  CHECK(m.mcc == doctest::Approx(1400.0 / std::sqrt(60.0 * 80.0 * 40.0 * 40.0)).epsilon(1e-12));
}

TEST_CASE("perfect predictor scores 1 everywhere; degenerate counts get flags") {
  const MetricRecord perfect = metrics({10, 0, 10, 0});
  CHECK(perfect.acc == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.specificity == 1.0);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.f1 == 1.0);
  CHECK(perfect.mcc == 1.0);

  const MetricRecord degenerate = metrics({0, 0, 0, 10});
  CHECK(degenerate.acc == 0.0);
  CHECK(degenerate.mcc == 0.0);
  CHECK(std::find(degenerate.flags.begin(), degenerate.flags.end(),
                  "mcc_zero_denominator") != degenerate.flags.end());

  CHECK_THROWS_AS(metrics({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("metric ranges and the F1 harmonic-mean identity") {
  SeededRng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const ConfusionCounts c{rng.uniform_index(20), rng.uniform_index(20), rng.uniform_index(20),
                            rng.uniform_index(20)};
    if (c.total() == 0) continue;
    const MetricRecord m = metrics(c);
    CHECK(m.acc >= 0.0);
    CHECK(m.acc <= 1.0);
    CHECK(m.recall >= 0.0);
    CHECK(m.recall <= 1.0);
    CHECK(m.precision >= 0.0);
    CHECK(m.precision <= 1.0);
    CHECK(m.specificity >= 0.0);
    CHECK(m.specificity <= 1.0);
    CHECK(m.f1 >= 0.0);
    CHECK(m.f1 <= 1.0);
    CHECK(m.mcc >= -1.0);
    CHECK(m.mcc <= 1.0);
    if (m.precision + m.recall > 0.0 && c.tp + c.fp > 0 && c.tp + c.fn > 0) {
      const double harmonic = 2.0 * m.precision * m.recall / (m.precision + m.recall);
      CHECK(m.f1 == doctest::Approx(harmonic).epsilon(1e-12));
    }
  }
}

TEST_CASE("roc_auc: trivial orderings and the derived example") {
  CHECK(roc_auc({1, 1, 0, 0}, {0.9, 0.8, 0.2, 0.1}).auc == doctest::Approx(1.0));
  CHECK(roc_auc({1, 0, 1, 0}, {0.5, 0.5, 0.5, 0.5}).auc == doctest::Approx(0.5));
  CHECK(roc_auc({1, 0, 1, 0}, {0.9, 0.8, 0.4, 0.3}).auc == doctest::Approx(0.75));
}

TEST_CASE("roc_auc rejects single-class input and non-finite scores") {
  CHECK_THROWS_AS(roc_auc({1, 1}, {0.5, 0.6}), InputError);
  CHECK_THROWS_AS(roc_auc({0, 0}, {0.5, 0.6}), InputError);
  CHECK_THROWS_AS(roc_auc({1, 0}, {std::nan(""), 0.5}), InputError);
}

TEST_CASE("roc_auc is invariant under strictly monotone score transforms") {
  SeededRng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.uniform_index(20);
    std::vector<int> labels;
    std::vector<double> scores;
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(rng.uniform() < 0.5 ? 1 : 0);
      has_pos = has_pos || labels.back() == 1;
      has_neg = has_neg || labels.back() == 0;
      scores.push_back(rng.uniform(0.05, 0.95));
    }
    if (!has_pos || !has_neg) continue;
    std::vector<double> transformed;
    for (double s : scores) transformed.push_back(std::exp(3.0 * s) - 1.0);
    CHECK(roc_auc(labels, scores).auc ==
          doctest::Approx(roc_auc(labels, transformed).auc).epsilon(1e-12));
  }
}

TEST_CASE("roc_auc equals concordant-pair counting, ties included") {
  SeededRng rng(23);
  const double grid[] = {0.1, 0.3, 0.5, 0.7};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(11);
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = rng.uniform() < 0.5 ? 1 : 0;
      has_pos = has_pos || labels[i] == 1;
      has_neg = has_neg || labels[i] == 0;
      scores[i] = grid[rng.uniform_index(4)];  // heavy ties on purpose
    }
    if (!has_pos || !has_neg) continue;
    const double fast = roc_auc(labels, scores).auc;
    const double slow = testsupport::auc_concordant_pairs(labels, scores);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
  }
}

TEST_CASE("roc curve starts at (0,0), ends at (1,1), monotone in both axes") {
  SeededRng rng(29);
  std::vector<int> labels;
  std::vector<double> scores;
  for (int i = 0; i < 40; ++i) {
    labels.push_back(i % 2);
    scores.push_back(rng.uniform());
  }
  const RocCurve curve = roc_auc(labels, scores);
  CHECK(curve.points.front().fpr == 0.0);
  CHECK(curve.points.front().tpr == 0.0);
  CHECK(curve.points.back().fpr == 1.0);
  CHECK(curve.points.back().tpr == 1.0);
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].fpr >= curve.points[i - 1].fpr);
    CHECK(curve.points[i].tpr >= curve.points[i - 1].tpr);
    CHECK(curve.points[i].threshold < curve.points[i - 1].threshold);
  }
}

TEST_CASE("run_cv is deterministic and averages the fold rows exactly") {
  const Dataset data = testsupport::small_dataset();
  const PipelineConfig cfg = testsupport::small_pipeline_config();
  const EvalReport a = run_cv(data, cfg, 3, 77);
  const EvalReport b = run_cv(data, cfg, 3, 77);
  REQUIRE(a.folds.size() == 3);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(a.folds[f].scores == b.folds[f].scores);
    CHECK(a.folds[f].metrics.auc == b.folds[f].metrics.auc);
  }
  double acc = 0.0, auc = 0.0;
  for (const FoldResult& f : a.folds) {
    acc += f.metrics.acc;
    auc += f.metrics.auc;
  }
  CHECK(a.average.acc == doctest::Approx(acc / 3.0).epsilon(1e-12));
  CHECK(a.average.auc == doctest::Approx(auc / 3.0).epsilon(1e-12));
  CHECK(!a.loocv);
}

TEST_CASE("a standalone fold reproduces its run inside the full CV") {
  const Dataset data = testsupport::small_dataset();
  const PipelineConfig cfg = testsupport::small_pipeline_config();
  const EvalReport whole = run_cv(data, cfg, 3, 42);
  SeededRng rng(42);
  const FoldPlan plan = make_folds(data.ld, 3, rng);
  for (std::size_t f = 0; f < 3; ++f) {
    const FoldResult alone = run_fold(data, plan, f, cfg);
    CHECK(alone.scores == whole.folds[f].scores);
    CHECK(alone.metrics.auc == whole.folds[f].metrics.auc);
  }
  CHECK_THROWS_AS(run_fold(data, plan, 3, cfg), std::invalid_argument);
}

TEST_CASE("strict mode never shows held-out positives to the training path") {
  const Dataset data = testsupport::small_dataset();
  PipelineConfig cfg = testsupport::small_pipeline_config();
  cfg.strict = true;

  SeededRng plan_rng(77);
  const FoldPlan plan = make_folds(data.ld, 3, plan_rng);
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> held(3);
  for (std::size_t f = 0; f < 3; ++f) {
    held[f] = {plan.folds[f].test_positives.begin(), plan.folds[f].test_positives.end()};
  }

  bool saw_any_event = false;
  run_cv(data, cfg, 3, 77,
         [&](std::string_view, std::size_t fold, std::size_t lnc, std::size_t dis) {
           saw_any_event = true;
           CHECK(!held[fold].count({lnc, dis}));
         });
  CHECK(saw_any_event);
}

TEST_CASE("loose mode keeps the full-data graph (held-out pairs visible)") {
  const Dataset data = testsupport::small_dataset();
  PipelineConfig cfg = testsupport::small_pipeline_config();
  cfg.strict = false;

  SeededRng plan_rng(77);
  const FoldPlan plan = make_folds(data.ld, 3, plan_rng);
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> held(3);
  for (std::size_t f = 0; f < 3; ++f) {
    held[f] = {plan.folds[f].test_positives.begin(), plan.folds[f].test_positives.end()};
  }

  bool leaked_into_graph = false;
  bool leaked_into_classifier = false;
  run_cv(data, cfg, 3, 77,
         [&](std::string_view stage, std::size_t fold, std::size_t lnc, std::size_t dis) {
           if (!held[fold].count({lnc, dis})) return;
           if (stage == "classifier") leaked_into_classifier = true;
           else leaked_into_graph = true;
         });
  CHECK(leaked_into_graph);
  // test pairs are still never classifier training pairs
  CHECK(!leaked_into_classifier);
}

TEST_CASE("k equal to the positive count becomes a pooled leave-one-out report") {
  SyntheticSpec spec;
  spec.lncrnas = 6;
  spec.diseases = 8;
  spec.mirnas = 6;
  spec.seed = 3;
  const Dataset data = to_dataset(make_planted_block(spec));
  PipelineConfig cfg = testsupport::small_pipeline_config();
  cfg.gate.epochs = 10;
  cfg.classifier.epochs = 20;
  const std::size_t n = data.ld.ones();
  const EvalReport report = run_cv(data, cfg, n, 5);
  CHECK(report.loocv);
  CHECK(report.folds.empty());
  CHECK(report.average.counts.total() == 2 * n);
  CHECK(report.pooled_roc.auc == report.average.auc);
}

TEST_CASE("ablation emits three paired reports over identical folds") {
  const Dataset data = testsupport::small_dataset();
  const PipelineConfig cfg = testsupport::small_pipeline_config();
  const auto reports = run_ablation(data, cfg, 3, 77);
  CHECK(reports[0].arm == FeatureArm::LinearOnly);
  CHECK(reports[1].arm == FeatureArm::NonlinearOnly);
  CHECK(reports[2].arm == FeatureArm::Fused);
  // identical fold plans: the pooled label sequences coincide
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(reports[0].folds[f].labels == reports[2].folds[f].labels);
    CHECK(reports[1].folds[f].labels == reports[2].folds[f].labels);
  }
}

TEST_CASE("rank_candidates: exclusions, ordering, tie-break by registry index") {
  const Dataset data = testsupport::small_dataset();
  PipelineConfig cfg = testsupport::small_pipeline_config();

  SUBCASE("unknown disease is an input error") {
    const TrainedPipeline pipeline = train_full_pipeline(data, cfg, 5);
    CHECK_THROWS_AS(rank_candidates(data, pipeline, "nope"), InputError);
  }

  SUBCASE("ranking excludes known associations and orders by score") {
    const TrainedPipeline pipeline = train_full_pipeline(data, cfg, 5);
    const std::string disease = data.registry.diseases()[0];
    const RankedPredictions ranked = rank_candidates(data, pipeline, disease);
    std::size_t known = 0;
    for (std::size_t i = 0; i < data.registry.lncrna_count(); ++i) known += data.ld.get(i, 0);
    CHECK(ranked.candidates.size() == data.registry.lncrna_count() - known);
    for (std::size_t i = 0; i < ranked.candidates.size(); ++i) {
      CHECK(ranked.candidates[i].rank == i + 1);
      if (i > 0) CHECK(ranked.candidates[i].score <= ranked.candidates[i - 1].score);
    }
    // scores match the scoring function
    for (const RankedCandidate& c : ranked.candidates) {
      const auto lnc = data.registry.lncrna_index(c.lncrna);
      REQUIRE(lnc.has_value());
      CHECK(c.score == score_pair(pipeline, *lnc, 0));
    }
  }

  SUBCASE("all-equal scores fall back to registry order") {
    cfg.classifier.zero_init = true;  // hidden units stay symmetric: constant scores
    cfg.classifier.dropout = 0.0;
    const TrainedPipeline pipeline = train_full_pipeline(data, cfg, 5);
    const std::string disease = data.registry.diseases()[1];
    const RankedPredictions ranked = rank_candidates(data, pipeline, disease);
    REQUIRE(ranked.candidates.size() >= 2);
    std::vector<std::size_t> indices;
    for (const RankedCandidate& c : ranked.candidates) {
      indices.push_back(*data.registry.lncrna_index(c.lncrna));
    }
    CHECK(std::is_sorted(indices.begin(), indices.end()));
  }

  SUBCASE("a fully associated disease yields an empty ranking") {
    Dataset full = testsupport::small_dataset();
    // associate every lncRNA with disease 2
    AssociationMatrix ld = full.ld;
    for (std::size_t i = 0; i < full.registry.lncrna_count(); ++i) ld.set(i, 2, true);
    const Dataset all_known =
        make_dataset(full.registry, ld, full.ml, full.md, full.dag, 0.5);
    const TrainedPipeline pipeline = train_full_pipeline(all_known, cfg, 5);
    const RankedPredictions ranked =
        rank_candidates(all_known, pipeline, all_known.registry.diseases()[2]);
    CHECK(ranked.candidates.empty());
  }
}

TEST_SUITE_END();

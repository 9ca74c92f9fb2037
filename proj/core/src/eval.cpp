#include "hgatelda/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hgatelda/errors.hpp"

namespace hgatelda {

FoldPlan make_folds(const AssociationMatrix& ld, std::size_t k, SeededRng& rng) {
  if (ld.role() != AssociationRole::LD) throw std::invalid_argument("make_folds: expects LD");
  auto positives = ld.one_entries();
  const std::size_t n = positives.size();
  if (k < 2 || k > n) {
    throw InputError("make_folds: k=" + std::to_string(k) + " out of range [2, " +
                     std::to_string(n) + "]");
  }
  rng.shuffle(positives);
  // one shared draw of test negatives, disjoint across folds and from all
  // positives, assigned round-robin like the positives
  const auto negatives = sample_negatives(ld, n, rng);

  FoldPlan plan;
  plan.k = k;
  plan.seed = rng.seed();
  plan.folds.resize(k);
  for (std::size_t i = 0; i < n; ++i) {
    plan.folds[i % k].test_positives.push_back(positives[i]);
    plan.folds[i % k].test_negatives.push_back(negatives[i]);
  }
  return plan;
}

ConfusionCounts confusion_at_threshold(const std::vector<int>& labels,
                                       const std::vector<double>& scores, double threshold) {
  if (labels.size() != scores.size()) {
    throw std::invalid_argument("confusion_at_threshold: labels/scores size mismatch");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i] == 1) {
      predicted ? ++c.tp : ++c.fn;
    } else {
      predicted ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

MetricRecord metrics(const ConfusionCounts& c, bool paper_eq20) {
  if (c.total() == 0) throw std::invalid_argument("metrics: all-zero confusion counts");
  MetricRecord m;
  m.counts = c;
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);

  auto ratio = [&m](double num, double den, const char* name) {
    if (den == 0.0) {
      m.flags.push_back(std::string(name) + "_zero_denominator");
      return 0.0;
    }
    return num / den;
  };

  m.acc = (tp + tn) / (tp + fp + tn + fn);
  m.recall = ratio(tp, tp + fn, "recall");
  m.specificity = ratio(tn, tn + fp, "specificity");
  m.precision = ratio(tp, tp + fp, "precision");
  m.f1 = ratio(2.0 * tp, 2.0 * tp + fp + fn, "f1");
  const double mcc_mid = paper_eq20 ? (tp + tn) : (tp + fn);
  const double mcc_den = std::sqrt((tp + fp) * mcc_mid * (tn + fp) * (tn + fn));
  m.mcc = ratio(tp * tn - fp * fn, mcc_den, "mcc");
  return m;
}

RocCurve roc_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.size() != scores.size()) {
    throw std::invalid_argument("roc_auc: labels/scores size mismatch");
  }
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(scores[i])) throw InputError("roc_auc: non-finite score");
    labels[i] == 1 ? ++pos : ++neg;
  }
  if (pos == 0 || neg == 0) {
    throw InputError("roc_auc: needs both classes (got " + std::to_string(pos) +
                     " positives, " + std::to_string(neg) + " negatives)");
  }

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  double auc = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  while (i < order.size()) {
    const double score = scores[order[i]];
    // consume the whole tie group in one threshold step
    while (i < order.size() && scores[order[i]] == score) {
      labels[order[i]] == 1 ? ++tp : ++fp;
      ++i;
    }
    const double tpr = static_cast<double>(tp) / static_cast<double>(pos);
    const double fpr = static_cast<double>(fp) / static_cast<double>(neg);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    curve.points.push_back({fpr, tpr, score});
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  curve.auc = auc;
  return curve;
}

Dataset make_dataset(EntityRegistry registry, AssociationMatrix ld, AssociationMatrix ml,
                     AssociationMatrix md, DiseaseDag dag, double delta) {
  const std::size_t p = registry.lncrna_count();
  const std::size_t q = registry.disease_count();
  const std::size_t r = registry.mirna_count();
  if (ld.rows() != p || ld.cols() != q || ml.rows() != p || ml.cols() != r ||
      md.rows() != q || md.cols() != r || dag.node_count() != q) {
    throw std::invalid_argument("make_dataset: axis mismatch against registry");
  }
  SimilarityMatrix ds = disease_similarity(dag, delta);
  return Dataset{std::move(registry), std::move(ld), std::move(ml), std::move(md),
                 std::move(dag), std::move(ds)};
}

Dataset load_dataset(const std::string& lncrna_path, const std::string& disease_path,
                     const std::string& mirna_path, const std::string& ld_path,
                     const std::string& ml_path, const std::string& md_path,
                     const std::string& dag_path, bool skip_header, double delta) {
  EntityRegistry registry = load_registry(lncrna_path, disease_path, mirna_path, skip_header);
  AssociationMatrix ld = load_associations(ld_path, AssociationRole::LD, registry, skip_header);
  AssociationMatrix ml = load_associations(ml_path, AssociationRole::ML, registry, skip_header);
  AssociationMatrix md = load_associations(md_path, AssociationRole::MD, registry, skip_header);
  DiseaseDag dag = load_dag(dag_path, registry, skip_header);
  return make_dataset(std::move(registry), std::move(ld), std::move(ml), std::move(md),
                      std::move(dag), delta);
}

namespace {

void observe_ld(const LeakageHook& hook, std::string_view stage, std::size_t fold,
                const AssociationMatrix& ld) {
  if (!hook) return;
  for (const auto& [i, j] : ld.one_entries()) hook(stage, fold, i, j);
}

/// Per-fold training state shared by the three ablation arms.
struct FoldContext {
  FeatureBundle features;
  PairSet train_pairs;
};

/// Everything up to (and including) the auto-encoder for one fold.
FoldContext prepare_fold(const Dataset& data, const Fold& fold, std::size_t fold_index,
                         const PipelineConfig& cfg, const SeededRng& fold_rng,
                         const LeakageHook& hook) {
  const AssociationMatrix train_ld = data.ld.without(fold.test_positives);
  const AssociationMatrix& visible_ld = cfg.strict ? train_ld : data.ld;

  observe_ld(hook, "lfs", fold_index, visible_ld);
  const SimilarityMatrix lfs = lncrna_functional_similarity(data.ds, visible_ld);
  const LinearFeatures linear =
      build_linear_features(lfs, data.ml, data.ds, data.md, cfg.normalize_features);

  observe_ld(hook, "graph", fold_index, visible_ld);
  const AttentionGraph graph = build_graph(visible_ld);

  SeededRng gate_rng = fold_rng.fork(1);
  const GateTrainResult gate = train_gate(cfg.gate, linear.stacked, graph, gate_rng);

  FoldContext ctx;
  auto [fl_nl, fd_nl] = split_latent(gate.latent, data.registry.lncrna_count());
  ctx.features = FeatureBundle{linear.fl, std::move(fl_nl), linear.fd, std::move(fd_nl)};

  ctx.train_pairs.positives = train_ld.one_entries();
  SeededRng neg_rng = fold_rng.fork(2);
  // negatives come from pairs unknown in the FULL data so no held-out
  // positive is ever labeled negative; the fold's test negatives stay
  // excluded to keep the train/test roles disjoint
  ctx.train_pairs.negatives =
      sample_negatives(data.ld, ctx.train_pairs.positives.size(), neg_rng, fold.test_negatives);
  if (hook) {
    for (const auto& [i, j] : ctx.train_pairs.positives) hook("classifier", fold_index, i, j);
    for (const auto& [i, j] : ctx.train_pairs.negatives) hook("classifier", fold_index, i, j);
  }
  return ctx;
}

FoldResult evaluate_arm(const Dataset& data, const FoldContext& ctx, const Fold& fold,
                        const PipelineConfig& cfg, FeatureArm arm, const SeededRng& fold_rng) {
  ctx.train_pairs.validate(data.registry.lncrna_count(), data.registry.disease_count());
  const TrainingSet training = build_training_set(ctx.train_pairs, ctx.features, arm);
  SeededRng clf_rng = fold_rng.fork(3);
  const ClassifierModel model = train_classifier(cfg.classifier, training, clf_rng);

  FoldResult result;
  Matrix test_inputs(fold.test_positives.size() + fold.test_negatives.size(),
                     ctx.features.pair_dim());
  std::size_t row = 0;
  for (const auto& [i, j] : fold.test_positives) {
    const auto v = fuse(i, j, ctx.features, arm);
    std::copy(v.begin(), v.end(), test_inputs.row(row++).begin());
    result.labels.push_back(1);
  }
  for (const auto& [i, j] : fold.test_negatives) {
    const auto v = fuse(i, j, ctx.features, arm);
    std::copy(v.begin(), v.end(), test_inputs.row(row++).begin());
    result.labels.push_back(0);
  }
  result.scores = predict_batch(model, test_inputs);
  result.roc = roc_auc(result.labels, result.scores);
  result.metrics = metrics(confusion_at_threshold(result.labels, result.scores, cfg.threshold),
                           cfg.paper_eq20);
  result.metrics.auc = result.roc.auc;
  return result;
}

MetricRecord average_of(const std::vector<FoldResult>& folds) {
  MetricRecord avg;
  const double n = static_cast<double>(folds.size());
  for (const FoldResult& f : folds) {
    avg.acc += f.metrics.acc;
    avg.recall += f.metrics.recall;
    avg.specificity += f.metrics.specificity;
    avg.precision += f.metrics.precision;
    avg.f1 += f.metrics.f1;
    avg.mcc += f.metrics.mcc;
    avg.auc += f.metrics.auc;
    avg.counts.tp += f.metrics.counts.tp;
    avg.counts.fp += f.metrics.counts.fp;
    avg.counts.tn += f.metrics.counts.tn;
    avg.counts.fn += f.metrics.counts.fn;
  }
  avg.acc /= n;
  avg.recall /= n;
  avg.specificity /= n;
  avg.precision /= n;
  avg.f1 /= n;
  avg.mcc /= n;
  avg.auc /= n;
  return avg;
}

EvalReport assemble_report(const FoldPlan& plan, const PipelineConfig& cfg, FeatureArm arm,
                           std::vector<FoldResult> fold_results) {
  EvalReport report;
  report.k = plan.k;
  report.seed = plan.seed;
  report.arm = arm;

  std::vector<int> pooled_labels;
  std::vector<double> pooled_scores;
  for (const FoldResult& f : fold_results) {
    pooled_labels.insert(pooled_labels.end(), f.labels.begin(), f.labels.end());
    pooled_scores.insert(pooled_scores.end(), f.scores.begin(), f.scores.end());
  }
  report.pooled_roc = roc_auc(pooled_labels, pooled_scores);

  // leave-one-out folds hold a single pair per class; per-fold rows are
  // meaningless, so the report is the pooled aggregate
  const std::size_t positive_total = pooled_labels.size() / 2;
  report.loocv = plan.k == positive_total;
  if (report.loocv) {
    report.average = metrics(
        confusion_at_threshold(pooled_labels, pooled_scores, cfg.threshold), cfg.paper_eq20);
    report.average.auc = report.pooled_roc.auc;
  } else {
    report.folds = std::move(fold_results);
    report.average = average_of(report.folds);
  }
  return report;
}

}  // namespace

FoldResult run_fold(const Dataset& data, const FoldPlan& plan, std::size_t fold_index,
                    const PipelineConfig& cfg, const LeakageHook& hook) {
  if (fold_index >= plan.folds.size()) throw std::invalid_argument("run_fold: bad fold index");
  // forking is position-independent, so a standalone fold reproduces the
  // exact stream it gets inside run_cv
  const SeededRng fold_rng = SeededRng(plan.seed).fork(fold_index + 1);
  const Fold& fold = plan.folds[fold_index];
  const FoldContext ctx = prepare_fold(data, fold, fold_index, cfg, fold_rng, hook);
  return evaluate_arm(data, ctx, fold, cfg, cfg.arm, fold_rng);
}

EvalReport run_cv(const Dataset& data, const PipelineConfig& cfg, std::size_t k,
                  std::uint64_t seed, const LeakageHook& hook) {
  SeededRng rng(seed);
  const FoldPlan plan = make_folds(data.ld, k, rng);
  std::vector<FoldResult> results;
  results.reserve(plan.folds.size());
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    results.push_back(run_fold(data, plan, f, cfg, hook));
  }
  return assemble_report(plan, cfg, cfg.arm, std::move(results));
}

std::array<EvalReport, 3> run_ablation(const Dataset& data, const PipelineConfig& cfg,
                                       std::size_t k, std::uint64_t seed) {
  SeededRng rng(seed);
  const FoldPlan plan = make_folds(data.ld, k, rng);
  constexpr std::array<FeatureArm, 3> arms{FeatureArm::LinearOnly, FeatureArm::NonlinearOnly,
                                           FeatureArm::Fused};
  std::array<std::vector<FoldResult>, 3> results;
  for (std::size_t f = 0; f < plan.folds.size(); ++f) {
    const SeededRng fold_rng = rng.fork(f + 1);
    const FoldContext ctx = prepare_fold(data, plan.folds[f], f, cfg, fold_rng, {});
    for (std::size_t a = 0; a < arms.size(); ++a) {
      results[a].push_back(evaluate_arm(data, ctx, plan.folds[f], cfg, arms[a], fold_rng));
    }
  }
  return {assemble_report(plan, cfg, arms[0], std::move(results[0])),
          assemble_report(plan, cfg, arms[1], std::move(results[1])),
          assemble_report(plan, cfg, arms[2], std::move(results[2]))};
}

TrainedPipeline train_full_pipeline(const Dataset& data, const PipelineConfig& cfg,
                                    std::uint64_t seed, const LeakageHook& hook) {
  const SeededRng master(seed);

  observe_ld(hook, "lfs", 0, data.ld);
  const SimilarityMatrix lfs = lncrna_functional_similarity(data.ds, data.ld);
  const LinearFeatures linear =
      build_linear_features(lfs, data.ml, data.ds, data.md, cfg.normalize_features);

  observe_ld(hook, "graph", 0, data.ld);
  const AttentionGraph graph = build_graph(data.ld);
  SeededRng gate_rng = master.fork(1);
  GateTrainResult gate = train_gate(cfg.gate, linear.stacked, graph, gate_rng);

  TrainedPipeline pipeline;
  pipeline.arm = cfg.arm;
  auto [fl_nl, fd_nl] = split_latent(gate.latent, data.registry.lncrna_count());
  pipeline.features = FeatureBundle{linear.fl, std::move(fl_nl), linear.fd, std::move(fd_nl)};
  pipeline.gate = std::move(gate.model);

  PairSet pairs;
  pairs.positives = data.ld.one_entries();
  SeededRng neg_rng = master.fork(2);
  pairs.negatives = sample_negatives(data.ld, pairs.positives.size(), neg_rng);
  if (hook) {
    for (const auto& [i, j] : pairs.positives) hook("classifier", 0, i, j);
    for (const auto& [i, j] : pairs.negatives) hook("classifier", 0, i, j);
  }
  pairs.validate(data.registry.lncrna_count(), data.registry.disease_count());

  const TrainingSet training = build_training_set(pairs, pipeline.features, cfg.arm);
  SeededRng clf_rng = master.fork(3);
  pipeline.classifier = train_classifier(cfg.classifier, training, clf_rng);
  return pipeline;
}

double score_pair(const TrainedPipeline& pipeline, std::size_t lnc, std::size_t dis) {
  const auto v = fuse(lnc, dis, pipeline.features, pipeline.arm);
  return predict(pipeline.classifier, v);
}

RankedPredictions rank_candidates(const Dataset& data, const TrainedPipeline& pipeline,
                                  const std::string& disease_id) {
  const auto dis = data.registry.disease_index(disease_id);
  if (!dis) throw InputError("rank_candidates: unknown disease '" + disease_id + "'");

  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < data.registry.lncrna_count(); ++i) {
    if (data.ld.get(i, *dis)) continue;  // known associations are excluded
    scored.emplace_back(score_pair(pipeline, i, *dis), i);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  RankedPredictions out;
  out.disease = disease_id;
  out.candidates.reserve(scored.size());
  for (std::size_t idx = 0; idx < scored.size(); ++idx) {
    out.candidates.push_back(
        {idx + 1, data.registry.lncrnas()[scored[idx].second], scored[idx].first});
  }
  return out;
}

}  // namespace hgatelda

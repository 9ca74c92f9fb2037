#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgatelda/associations.hpp"
#include "hgatelda/classifier.hpp"
#include "hgatelda/disease_dag.hpp"
#include "hgatelda/features.hpp"
#include "hgatelda/gate.hpp"
#include "hgatelda/registry.hpp"
#include "hgatelda/similarity.hpp"

namespace hgatelda {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct Fold {
  std::vector<IndexPair> test_positives;
  std::vector<IndexPair> test_negatives;
};

/// Positive folds partition all known pairs; sizes differ by at most one;
/// test negatives are sampled without replacement across folds and are
/// disjoint from every positive.
struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::vector<Fold> folds;
};

/// Seeded shuffle then round-robin partition. k must satisfy
/// 2 <= k <= positive count; k == positive count is leave-one-out.
FoldPlan make_folds(const AssociationMatrix& ld, std::size_t k, SeededRng& rng);

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

ConfusionCounts confusion_at_threshold(const std::vector<int>& labels,
                                       const std::vector<double>& scores, double threshold);

struct MetricRecord {
  double acc = 0, recall = 0, specificity = 0, precision = 0, f1 = 0, mcc = 0;
  double auc = 0;  // filled by the caller from the ROC sweep
  ConfusionCounts counts;
  std::vector<std::string> flags;  // names of metrics zeroed by a 0/0
};

/// Confusion-based metrics. paper_eq20 switches the Matthews denominator to
/// the (TP+TN) variant printed in the method's original description; the
/// default is the standard (TP+FN) form.
MetricRecord metrics(const ConfusionCounts& c, bool paper_eq20 = false);

struct RocPoint {
  double fpr = 0, tpr = 0, threshold = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0;
};

/// Threshold sweep over unique scores (ties grouped into one step, matching
/// the Mann-Whitney half-tie convention) with trapezoidal AUC. Throws
/// InputError when only one class is present or a score is non-finite.
RocCurve roc_auc(const std::vector<int>& labels, const std::vector<double>& scores);

/// Everything a run needs, loaded once. The disease similarity is computed
/// on the full DAG up front; the fold loop recomputes only what leaks.
struct Dataset {
  EntityRegistry registry;
  AssociationMatrix ld, ml, md;
  DiseaseDag dag;
  SimilarityMatrix ds;
};

Dataset make_dataset(EntityRegistry registry, AssociationMatrix ld, AssociationMatrix ml,
                     AssociationMatrix md, DiseaseDag dag, double delta);

Dataset load_dataset(const std::string& lncrna_path, const std::string& disease_path,
                     const std::string& mirna_path, const std::string& ld_path,
                     const std::string& ml_path, const std::string& md_path,
                     const std::string& dag_path, bool skip_header, double delta);

struct PipelineConfig {
  double delta = kDefaultDelta;
  GateConfig gate;
  ClassifierConfig classifier;
  /// strict: held-out positives are removed from LD before LFS computation
  /// and attention-graph construction (they are never classifier training
  /// pairs in either mode).
  bool strict = true;
  bool paper_eq20 = false;
  bool normalize_features = false;
  FeatureArm arm = FeatureArm::Fused;
  double threshold = 0.5;
};

/// Observes every association the training path consumes (fold by fold);
/// lets tests assert that held-out pairs stay unseen. Stages: "lfs",
/// "graph", "classifier". Full-data training reports fold 0.
using LeakageHook = std::function<void(std::string_view stage, std::size_t fold,
                                       std::size_t lnc, std::size_t dis)>;

struct FoldResult {
  MetricRecord metrics;
  RocCurve roc;
  std::vector<int> labels;
  std::vector<double> scores;
};

struct EvalReport {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool loocv = false;
  FeatureArm arm = FeatureArm::Fused;
  std::vector<FoldResult> folds;  // empty in LOOCV mode
  /// Arithmetic mean of the fold rows (counts summed); in LOOCV mode the
  /// metrics of the pooled score set.
  MetricRecord average;
  RocCurve pooled_roc;  // all fold scores pooled
};

/// One fold end to end: strict mode removes the held-out positives from LD
/// before LFS computation and graph construction, trains the fold's
/// auto-encoder and classifier, then scores the held-out pairs.
FoldResult run_fold(const Dataset& data, const FoldPlan& plan, std::size_t fold_index,
                    const PipelineConfig& cfg, const LeakageHook& hook = {});

EvalReport run_cv(const Dataset& data, const PipelineConfig& cfg, std::size_t k,
                  std::uint64_t seed, const LeakageHook& hook = {});

/// Linear-only, nonlinear-only and fused runs over identical fold plans and
/// identical per-fold auto-encoder trainings (only the classifier input
/// changes), so the three reports form a paired comparison.
std::array<EvalReport, 3> run_ablation(const Dataset& data, const PipelineConfig& cfg,
                                       std::size_t k, std::uint64_t seed);

/// Pipeline trained on the full data, reusable for scoring arbitrary pairs.
struct TrainedPipeline {
  FeatureBundle features;
  GateModel gate;
  ClassifierModel classifier;
  FeatureArm arm = FeatureArm::Fused;
};

TrainedPipeline train_full_pipeline(const Dataset& data, const PipelineConfig& cfg,
                                    std::uint64_t seed, const LeakageHook& hook = {});

double score_pair(const TrainedPipeline& pipeline, std::size_t lnc, std::size_t dis);

struct RankedCandidate {
  std::size_t rank = 0;
  std::string lncrna;
  double score = 0;
};

/// All non-associated lncRNAs for one disease, scores nonincreasing, ties
/// broken by registry index.
struct RankedPredictions {
  std::string disease;
  std::vector<RankedCandidate> candidates;
};

RankedPredictions rank_candidates(const Dataset& data, const TrainedPipeline& pipeline,
                                  const std::string& disease_id);

}  // namespace hgatelda

#pragma once

#include <string>

#include "hgatelda/eval.hpp"
#include "hgatelda/similarity.hpp"

namespace hgatelda {

/// Metrics report as JSON: a per-fold array plus the averaged row.
void write_metrics_json(const std::string& path, const EvalReport& report, bool strict);
std::string metrics_json(const EvalReport& report, bool strict);

/// ROC curve as CSV `fpr,tpr,threshold`.
void write_roc_csv(const std::string& path, const RocCurve& curve);

/// Rankings as CSV `disease,rank,lncrna,score`; top == 0 keeps all rows.
void write_rankings_csv(const std::string& path, const RankedPredictions& ranked,
                        std::size_t top = 0);

/// Similarity matrix as TSV `row_id<TAB>col_id<TAB>value`.
void write_similarity_tsv(const std::string& path, const SimilarityMatrix& sim,
                          const std::vector<std::string>& ids);

/// Feature matrix as TSV `row_id<TAB>v0<TAB>v1...` (debug export).
void write_matrix_tsv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& row_ids);

/// Fixed-width summary table in the style of the published ten-fold results
/// (one row per fold plus the average).
std::string summary_table(const EvalReport& report);

/// When the loaded data matches the published reference dataset's scale
/// (240 lncRNAs, 412 diseases, 495 miRNAs, 2697 associations), returns an
/// informational side-by-side of our averages against the published numbers;
/// empty string otherwise.
std::string reference_comparison(std::size_t lncrnas, std::size_t diseases, std::size_t mirnas,
                                 std::size_t ld_ones, const MetricRecord& average);

}  // namespace hgatelda

#include "hgatelda/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hgatelda/errors.hpp"

namespace hgatelda {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  return out;
}

ordered_json metric_json(const MetricRecord& m) {
  ordered_json j;
  j["acc"] = m.acc;
  j["recall"] = m.recall;
  j["specificity"] = m.specificity;
  j["precision"] = m.precision;
  j["f1"] = m.f1;
  j["mcc"] = m.mcc;
  j["auc"] = m.auc;
  j["counts"] = {{"tp", m.counts.tp}, {"fp", m.counts.fp}, {"tn", m.counts.tn},
                 {"fn", m.counts.fn}};
  j["flags"] = m.flags;
  return j;
}

}  // namespace

std::string metrics_json(const EvalReport& report, bool strict) {
  ordered_json j;
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["mode"] = report.loocv ? "loocv" : "kfold";
  j["leakage"] = strict ? "strict" : "loose";
  j["features"] = feature_arm_name(report.arm);
  ordered_json folds = ordered_json::array();
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    ordered_json fold = metric_json(report.folds[f].metrics);
    fold["fold"] = f;
    folds.push_back(std::move(fold));
  }
  j["folds"] = std::move(folds);
  j["average"] = metric_json(report.average);
  j["pooled_auc"] = report.pooled_roc.auc;
  return j.dump(2) + "\n";
}

void write_metrics_json(const std::string& path, const EvalReport& report, bool strict) {
  open_out(path) << metrics_json(report, strict);
}

void write_roc_csv(const std::string& path, const RocCurve& curve) {
  auto out = open_out(path);
  out << "fpr,tpr,threshold\n";
  for (const RocPoint& p : curve.points) {
    out << fmt(p.fpr) << ',' << fmt(p.tpr) << ','
        << (std::isinf(p.threshold) ? "inf" : fmt(p.threshold)) << '\n';
  }
}

void write_rankings_csv(const std::string& path, const RankedPredictions& ranked,
                        std::size_t top) {
  auto out = open_out(path);
  out << "disease,rank,lncrna,score\n";
  for (const RankedCandidate& c : ranked.candidates) {
    if (top != 0 && c.rank > top) break;
    out << ranked.disease << ',' << c.rank << ',' << c.lncrna << ',' << fmt(c.score) << '\n';
  }
}

void write_similarity_tsv(const std::string& path, const SimilarityMatrix& sim,
                          const std::vector<std::string>& ids) {
  if (ids.size() != sim.size()) {
    throw std::invalid_argument("write_similarity_tsv: id count mismatch");
  }
  auto out = open_out(path);
  for (std::size_t i = 0; i < sim.size(); ++i) {
    for (std::size_t j = 0; j < sim.size(); ++j) {
      out << ids[i] << '\t' << ids[j] << '\t' << fmt(sim(i, j)) << '\n';
    }
  }
}

void write_matrix_tsv(const std::string& path, const Matrix& m,
                      const std::vector<std::string>& row_ids) {
  if (row_ids.size() != m.rows()) {
    throw std::invalid_argument("write_matrix_tsv: row id count mismatch");
  }
  auto out = open_out(path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << row_ids[i];
    for (double v : m.row(i)) out << '\t' << fmt(v);
    out << '\n';
  }
}

std::string summary_table(const EvalReport& report) {
  std::string out = "Fold     Acc     Sen    Spec     Pre     Mcc     AUC\n";
  char line[160];
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    const MetricRecord& m = report.folds[f].metrics;
    std::snprintf(line, sizeof(line), "%-7zu %5.3f   %5.3f   %5.3f   %5.3f   %5.3f   %5.3f\n", f,
                  m.acc, m.recall, m.specificity, m.precision, m.mcc, m.auc);
    out += line;
  }
  const MetricRecord& a = report.average;
  std::snprintf(line, sizeof(line), "%-7s %5.3f   %5.3f   %5.3f   %5.3f   %5.3f   %5.3f\n",
                report.loocv ? "pooled" : "average", a.acc, a.recall, a.specificity, a.precision,
                a.mcc, a.auc);
  out += line;
  return out;
}

std::string reference_comparison(std::size_t lncrnas, std::size_t diseases, std::size_t mirnas,
                                 std::size_t ld_ones, const MetricRecord& average) {
  // published reference results for this method on its original
  // 240/412/495-entity dataset; informational only
  if (lncrnas != 240 || diseases != 412 || mirnas != 495 || ld_ones != 2697) return {};
  struct Row {
    const char* name;
    double ours;
    double published;
  };
  const Row rows[] = {
      {"Acc", average.acc, 0.939}, {"Sen", average.recall, 0.951},
      {"Spec", average.specificity, 0.927}, {"Pre", average.precision, 0.928},
      {"Mcc", average.mcc, 0.878}, {"AUC", average.auc, 0.969},
  };
  std::string out =
      "Dataset matches the published reference scale; side-by-side comparison\n"
      "(informational only, not an acceptance check):\n";
  out += "Metric     this run   published\n";
  char line[96];
  for (const Row& r : rows) {
    std::snprintf(line, sizeof(line), "%-9s %8.3f   %9.3f\n", r.name, r.ours, r.published);
    out += line;
  }
  return out;
}

}  // namespace hgatelda

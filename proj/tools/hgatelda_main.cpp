#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hgatelda/checkpoint.hpp"
#include "hgatelda/config.hpp"
#include "hgatelda/errors.hpp"
#include "hgatelda/eval.hpp"
#include "hgatelda/features.hpp"
#include "hgatelda/gradcheck.hpp"
#include "hgatelda/reports.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hgatelda;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct CliOptions {
  std::string config_path;
  std::string disease;       // rank only
  bool export_features = false;  // similarity only
  RunConfig cfg;
};

/// Binds the shared flags onto a subcommand. File values load first
/// (parse-time callback), then flag values override them.
void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option_function<std::string>(
         "--config",
         [&opts](const std::string& path) {
           const RunConfig defaults;
           RunConfig loaded = parse_config_file(path);
           // keep anything a flag already changed? flags run after this
           // callback, so plain assignment gives file-over-default,
           // flag-over-file precedence.
           loaded.out_dir = loaded.out_dir.empty() ? defaults.out_dir : loaded.out_dir;
           opts.cfg = std::move(loaded);
           opts.config_path = path;
         },
         "Flat key = value config file; flags override file values")
      ->check(CLI::ExistingFile);

  cmd->add_option("--lncrnas", opts.cfg.lncrna_list, "lncRNA ID list (one per line)");
  cmd->add_option("--diseases", opts.cfg.disease_list, "disease ID list");
  cmd->add_option("--mirnas", opts.cfg.mirna_list, "miRNA ID list");
  cmd->add_option("--ld", opts.cfg.ld_edges, "lncRNA-disease edge list (TSV)");
  cmd->add_option("--ml", opts.cfg.ml_edges, "lncRNA-miRNA edge list (TSV)");
  cmd->add_option("--md", opts.cfg.md_edges, "disease-miRNA edge list (TSV)");
  cmd->add_option("--dag", opts.cfg.dag_edges, "disease DAG edge list (child TAB parent)");
  cmd->add_flag("--header", opts.cfg.header, "Skip the first line of every input file");
  cmd->add_option("--seed", opts.cfg.seed, "Run seed; all randomness derives from it");
  cmd->add_option("--k", opts.cfg.k, "Fold count (set to the positive count for LOOCV)");
  cmd->add_option("--delta", opts.cfg.delta, "Semantic contribution decay factor");
  cmd->add_flag("--strict,!--loose", opts.cfg.strict,
                "strict: recompute LFS and the attention graph per fold from training "
                "positives only (default); loose: keep the full-data graph");
  cmd->add_flag("--ablation", opts.cfg.ablation,
                "Evaluate linear-only, nonlinear-only and fused feature arms");
  cmd->add_option("--top", opts.cfg.top, "Truncate rankings to the top N rows (0 = all)");
  cmd->add_flag("--paper-literal-init", opts.cfg.paper_literal_init,
                "Zero-initialize classifier weights and biases exactly as published "
                "(leaves hidden units symmetric; default is seeded fan-in uniform)");
  cmd->add_flag("--paper-eq20", opts.cfg.paper_eq20,
                "Use the published Matthews-coefficient denominator variant (TP+TN in "
                "place of TP+FN)");
  cmd->add_flag("--normalize-features", opts.cfg.normalize_features,
                "L2-normalize linear feature rows");
  cmd->add_option("--out", opts.cfg.out_dir, "Output directory");

  cmd->add_option("--gate-dims", opts.cfg.gate_dims, "Encoder layer widths")->delimiter(',');
  cmd->add_option("--gate-heads", opts.cfg.gate_heads, "Attention heads per layer");
  cmd->add_option("--gate-epochs", opts.cfg.gate_epochs, "Auto-encoder training epochs");
  cmd->add_option("--gate-learning-rate", opts.cfg.gate_learning_rate, "Auto-encoder Adam rate");
  cmd->add_option("--classifier-dims", opts.cfg.classifier_dims, "Hidden layer widths")
      ->delimiter(',');
  cmd->add_option("--classifier-epochs", opts.cfg.classifier_epochs, "Classifier epochs");
  cmd->add_option("--classifier-learning-rate", opts.cfg.classifier_learning_rate,
                  "Classifier Adam rate");
  cmd->add_option("--classifier-dropout", opts.cfg.classifier_dropout,
                  "Hidden-layer dropout rate");
}

fs::path prepare_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  write_config_file((dir / "config.txt").string(), cfg);
  return dir;
}

int cmd_similarity(const CliOptions& opts) {
  const Dataset data = opts.cfg.load();
  const fs::path dir = prepare_out_dir(opts.cfg);
  const SimilarityMatrix lfs = lncrna_functional_similarity(data.ds, data.ld);
  write_similarity_tsv((dir / "ds.tsv").string(), data.ds, data.registry.diseases());
  write_similarity_tsv((dir / "lfs.tsv").string(), lfs, data.registry.lncrnas());
  std::cout << "wrote " << (dir / "ds.tsv").string() << " (" << data.ds.size() << "x"
            << data.ds.size() << ") and " << (dir / "lfs.tsv").string() << " (" << lfs.size()
            << "x" << lfs.size() << ")\n";
  if (opts.export_features) {
    const LinearFeatures linear =
        build_linear_features(lfs, data.ml, data.ds, data.md, opts.cfg.normalize_features);
    std::vector<std::string> node_ids = data.registry.lncrnas();
    node_ids.insert(node_ids.end(), data.registry.diseases().begin(),
                    data.registry.diseases().end());
    write_matrix_tsv((dir / "f.tsv").string(), linear.stacked, node_ids);
    std::cout << "wrote " << (dir / "f.tsv").string() << " (" << linear.stacked.rows() << "x"
              << linear.stacked.cols() << ")\n";
  }
  return kExitOk;
}

void emit_report(const fs::path& dir, const EvalReport& report, const RunConfig& cfg,
                 const std::string& tag) {
  const std::string suffix = tag.empty() ? "" : "_" + tag;
  write_metrics_json((dir / ("metrics" + suffix + ".json")).string(), report, cfg.strict);
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    write_roc_csv((dir / ("roc" + suffix + "_fold" + std::to_string(f) + ".csv")).string(),
                  report.folds[f].roc);
  }
  write_roc_csv((dir / ("roc" + suffix + "_pooled.csv")).string(), report.pooled_roc);
  if (!tag.empty()) std::cout << "[" << tag << "]\n";
  std::cout << summary_table(report);
}

int cmd_cv(const CliOptions& opts) {
  const Dataset data = opts.cfg.load();
  const fs::path dir = prepare_out_dir(opts.cfg);
  const PipelineConfig pipeline = opts.cfg.pipeline();
  if (opts.cfg.ablation) {
    const auto reports = run_ablation(data, pipeline, opts.cfg.k, opts.cfg.seed);
    emit_report(dir, reports[0], opts.cfg, "linear_only");
    emit_report(dir, reports[1], opts.cfg, "nonlinear_only");
    emit_report(dir, reports[2], opts.cfg, "fused");
    const std::string cmp = reference_comparison(
        data.registry.lncrna_count(), data.registry.disease_count(),
        data.registry.mirna_count(), data.ld.ones(), reports[2].average);
    if (!cmp.empty()) std::cout << cmp;
  } else {
    const EvalReport report = run_cv(data, pipeline, opts.cfg.k, opts.cfg.seed);
    emit_report(dir, report, opts.cfg, "");
    const std::string cmp = reference_comparison(
        data.registry.lncrna_count(), data.registry.disease_count(),
        data.registry.mirna_count(), data.ld.ones(), report.average);
    if (!cmp.empty()) std::cout << cmp;
  }
  return kExitOk;
}

int cmd_rank(const CliOptions& opts) {
  const Dataset data = opts.cfg.load();
  if (!data.registry.disease_index(opts.disease)) {
    throw InputError("rank: unknown disease '" + opts.disease + "'");
  }
  const fs::path dir = prepare_out_dir(opts.cfg);
  const TrainedPipeline pipeline =
      train_full_pipeline(data, opts.cfg.pipeline(), opts.cfg.seed);
  const RankedPredictions ranked = rank_candidates(data, pipeline, opts.disease);
  const fs::path path = dir / "rankings.csv";
  write_rankings_csv(path.string(), ranked, opts.cfg.top);
  save_gate_model((dir / "gate.ckpt").string(), pipeline.gate);
  save_classifier_model((dir / "classifier.ckpt").string(), pipeline.classifier);
  std::cout << "wrote " << path.string() << " ("
            << (opts.cfg.top == 0 ? ranked.candidates.size()
                                  : std::min<std::size_t>(opts.cfg.top, ranked.candidates.size()))
            << " rows)\n";
  return kExitOk;
}

/// Max relative gradient error for the auto-encoder and classifier on small
/// random instances; exits nonzero above the 1e-4 bar.
int cmd_gradcheck(const CliOptions& opts) {
  const double kBar = 1e-4;
  const double h = 1e-5;
  std::string report;
  double worst = 0.0;
  char line[160];

  {  // auto-encoder: 10 nodes, 6 -> 5 -> 4 dims, 2 heads
    SeededRng rng(opts.cfg.seed);
    AssociationMatrix ld(AssociationRole::LD, 4, 6);
    for (std::size_t i = 0; i < ld.rows(); ++i)
      for (std::size_t j = 0; j < ld.cols(); ++j)
        if (rng.uniform() < 0.4) ld.set(i, j, true);
    const AttentionGraph graph = build_graph(ld);
    Matrix features(10, 6);
    for (double& v : features.flat()) v = rng.uniform(-1.0, 1.0);
    GateConfig gcfg;
    gcfg.encoder_dims = {5, 4};
    gcfg.heads = 2;
    GateModel model = init_gate_model(6, gcfg, rng);

    const GateForwardCache cache = gate_forward(model, features, graph);
    const GateGradients grads = gate_backward(model, cache, features, graph);

    auto check_param = [&](Matrix& param, const Matrix& analytic, const std::string& name) {
      const Matrix numeric = finite_diff_grad(
          [&](const Matrix& candidate) {
            Matrix saved = param;
            param = candidate;
            const double loss =
                reconstruction_loss(features, gate_forward(model, features, graph).reconstruction);
            param = saved;
            return loss;
          },
          param, h);
      const double err = max_relative_error(analytic, numeric);
      worst = std::max(worst, err);
      std::snprintf(line, sizeof(line), "  %-24s max_rel_err %.3e\n", name.c_str(), err);
      report += line;
    };
    report += "gate (10 nodes, dims 6->5->4, 2 heads):\n";
    for (std::size_t li = 0; li < model.encoder.size(); ++li) {
      for (std::size_t k = 0; k < model.encoder[li].head_count(); ++k) {
        check_param(model.encoder[li].weights[k], grads.encoder[li].weights[k],
                    "encoder" + std::to_string(li) + ".W" + std::to_string(k));
        check_param(model.encoder[li].attention[k], grads.encoder[li].attention[k],
                    "encoder" + std::to_string(li) + ".a" + std::to_string(k));
      }
    }
    for (std::size_t li = 0; li < model.decoder.size(); ++li) {
      for (std::size_t k = 0; k < model.decoder[li].head_count(); ++k) {
        check_param(model.decoder[li].weights[k], grads.decoder[li].weights[k],
                    "decoder" + std::to_string(li) + ".W" + std::to_string(k));
        check_param(model.decoder[li].attention[k], grads.decoder[li].attention[k],
                    "decoder" + std::to_string(li) + ".a" + std::to_string(k));
      }
    }
  }

  {  // classifier: 5 samples
    SeededRng rng(opts.cfg.seed + 1);
    Matrix inputs(5, 8);
    for (double& v : inputs.flat()) v = rng.uniform(-1.0, 1.0);
    const std::vector<int> labels{1, 0, 1, 1, 0};
    ClassifierConfig ccfg;
    ccfg.hidden_dims = {6, 4};
    ccfg.dropout = 0.0;
    ClassifierModel model = init_classifier(8, ccfg, rng);
    const ClassifierGradients grads = classifier_gradients(model, inputs, labels);

    auto check_param = [&](Matrix& param, const Matrix& analytic, const std::string& name) {
      const Matrix numeric = finite_diff_grad(
          [&](const Matrix& candidate) {
            Matrix saved = param;
            param = candidate;
            const double loss = classifier_loss(model, inputs, labels);
            param = saved;
            return loss;
          },
          param, h);
      const double err = max_relative_error(analytic, numeric);
      worst = std::max(worst, err);
      std::snprintf(line, sizeof(line), "  %-24s max_rel_err %.3e\n", name.c_str(), err);
      report += line;
    };
    report += "classifier (5 samples, dims 8->6->4->1):\n";
    for (std::size_t li = 0; li < model.hidden.size(); ++li) {
      check_param(model.hidden[li].weights, grads.hidden[li].weights,
                  "hidden" + std::to_string(li) + ".W");
      check_param(model.hidden[li].bias, grads.hidden[li].bias,
                  "hidden" + std::to_string(li) + ".b");
    }
    check_param(model.output.weights, grads.output.weights, "output.W");
    check_param(model.output.bias, grads.output.bias, "output.b");
  }

  const bool pass = worst < kBar;
  std::snprintf(line, sizeof(line), "max relative error %.3e (bar %.1e): %s\n", worst, kBar,
                pass ? "PASS" : "FAIL");
  report += line;
  std::cout << report;
  if (!opts.cfg.out_dir.empty()) {
    const fs::path dir = prepare_out_dir(opts.cfg);
    std::ofstream out(dir / "gradcheck.txt");
    out << report;
  }
  return pass ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous-network lncRNA-disease association prediction"};
  app.require_subcommand(1);

  CliOptions opts;
  CLI::App* similarity =
      app.add_subcommand("similarity", "Export disease and lncRNA similarity matrices");
  add_common_options(similarity, opts);
  similarity->add_flag("--export-features", opts.export_features,
                       "Also export the stacked linear feature matrix as f.tsv");
  CLI::App* cv = app.add_subcommand("cv", "Cross-validated evaluation with metrics and ROC");
  add_common_options(cv, opts);
  CLI::App* rank = app.add_subcommand("rank", "Rank candidate lncRNAs for one disease");
  add_common_options(rank, opts);
  rank->add_option("--disease", opts.disease, "Disease ID to rank candidates for")->required();
  CLI::App* gradcheck =
      app.add_subcommand("gradcheck", "Finite-difference check of all analytic gradients");
  add_common_options(gradcheck, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (similarity->parsed()) return cmd_similarity(opts);
    if (cv->parsed()) return cmd_cv(opts);
    if (rank->parsed()) return cmd_rank(opts);
    if (gradcheck->parsed()) return cmd_gradcheck(opts);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

// Command-line front end: train, predict, tune, benchmark, compare, synth.
//
// Exit codes: 0 success, 1 validation error, 2 numeric/solver failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "awlssvm/errors.hpp"
#include "awlssvm/eval.hpp"
#include "awlssvm/metrics.hpp"
#include "awlssvm/run_config.hpp"
#include "awlssvm/serialization.hpp"
#include "awlssvm/synthetic.hpp"

namespace fs = std::filesystem;
using namespace awlssvm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : load_run_config(path);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  out << text;
}

int cmd_train(const std::string& data, const std::string& config_path, const std::string& out,
              const std::string& method_name) {
  const RunConfig cfg = config_or_default(config_path);
  const Method method = Method::parse(method_name);
  const MultiViewDataset ds = load_dataset(data);
  const TrainedModel model = fit_method(ds, cfg.train, method, cfg.folds, cfg.search.seed);
  save_model(model, out);
  std::cerr << "trained " << method.name() << " on " << ds.num_samples() << " samples, "
            << ds.num_views() << " views, " << ds.num_classes << " classes -> " << out << "\n";
  return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data, const std::string& out) {
  const TrainedModel model = load_model(model_path);
  const MultiViewDataset ds = load_dataset(data, /*require_labels=*/false);
  const Prediction pred = predict(model, ds.views);

  std::string csv = "sample_index,predicted_class";
  for (Eigen::Index c = 0; c < pred.scores.cols(); ++c) csv += ",score_" + std::to_string(c);
  csv += "\n";
  for (std::size_t i = 0; i < pred.labels.size(); ++i) {
    csv += std::to_string(i) + "," + std::to_string(pred.labels[i]);
    for (Eigen::Index c = 0; c < pred.scores.cols(); ++c) {
      const auto value = nlohmann::json(pred.scores(static_cast<Eigen::Index>(i), c)).dump();
      csv += "," + value;
    }
    csv += "\n";
  }
  write_text(out, csv);
  if (!ds.labels.empty()) {
    std::printf("balanced_accuracy=%.6f\n", balanced_accuracy(ds.labels, pred.labels));
  }
  return kExitOk;
}

int cmd_tune(const std::string& data, const std::string& config_path, const std::string& out,
             const std::string& method_name) {
  const RunConfig cfg = config_or_default(config_path);
  const Method method = Method::parse(method_name);
  const MultiViewDataset ds = load_dataset(data);
  const TuneResult result = tune(ds, cfg.search, cfg.train, method, cfg.folds);

  nlohmann::json trials = nlohmann::json::array();
  for (const Trial& t : result.trials) {
    trials.push_back({{"index", t.index},
                      {"gamma", t.config.gamma},
                      {"rho", t.config.rho},
                      {"bandwidth", t.config.kernel.bandwidth},
                      {"bandwidth_multiplier", t.bandwidth_multiplier},
                      {"cv_score", t.cv_score}});
  }
  const nlohmann::json doc = {{"format_version", kFormatVersion},
                              {"dataset", ds.name},
                              {"method", method.name()},
                              {"folds", cfg.folds},
                              {"search", to_json(cfg.search)},
                              {"best", to_json(result.best)},
                              {"best_trial", result.best_index},
                              {"cv_score", result.best_score},
                              {"median_distance", result.median_distance},
                              {"trials", trials}};
  write_text(out, doc.dump(2) + "\n");
  std::printf("best trial %d: gamma=%g rho=%g bandwidth=%g cv_balanced_accuracy=%.4f\n",
              result.best_index, result.best.gamma, result.best.rho,
              result.best.kernel.bandwidth, result.best_score);
  return kExitOk;
}

int cmd_benchmark(const std::string& data, const std::string& methods_arg,
                  const std::string& config_path, const std::string& out) {
  const RunConfig cfg = config_or_default(config_path);
  const std::vector<Method> methods = parse_method_list(methods_arg);
  const MultiViewDataset ds = load_dataset(data);
  const auto reports = benchmark(ds, cfg.split, methods, cfg.search, cfg.train, cfg.folds);
  const auto doc = benchmark_document(ds.name, cfg.split, cfg.search, cfg.train, cfg.folds, reports);
  write_text(out, doc.dump(2) + "\n");
  std::cout << format_table(reports);
  return kExitOk;
}

std::vector<ReportSummary> read_summaries(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  if (files.empty()) throw ArgumentError("no report files under '" + path.string() + "'");
  std::vector<ReportSummary> all;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw ArgumentError("cannot open report '" + file.string() + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ArgumentError("report '" + file.string() + "' is not valid JSON");
    }
    auto part = read_report_summaries(doc);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

using ScoreTable = std::map<std::string, std::map<std::string, double>>;  // method -> dataset

ScoreTable by_method(const std::vector<ReportSummary>& summaries, std::set<std::string>& datasets,
                     std::vector<std::string>& method_order) {
  ScoreTable table;
  for (const ReportSummary& s : summaries) {
    datasets.insert(s.dataset);
    if (!table.contains(s.method)) method_order.push_back(s.method);
    table[s.method][s.dataset] = s.mean;
  }
  return table;
}

int cmd_compare(const std::vector<std::string>& paths) {
  std::set<std::string> datasets_a;
  std::set<std::string> datasets_b;
  std::vector<std::string> methods_a;
  std::vector<std::string> methods_b;
  const ScoreTable a = by_method(read_summaries(paths.at(0)), datasets_a, methods_a);
  const ScoreTable b = by_method(read_summaries(paths.at(1)), datasets_b, methods_b);
  if (datasets_a != datasets_b) {
    std::cerr << "error: the two report sets cover different datasets\n";
    return kExitValidation;
  }
  auto check_complete = [&](const ScoreTable& t, const char* side) {
    for (const auto& [method, scores] : t) {
      if (scores.size() != datasets_a.size()) {
        throw ArgumentError(std::string("report set ") + side + ": method '" + method +
                            "' does not cover every dataset");
      }
    }
  };
  check_complete(a, "A");
  check_complete(b, "B");

  std::printf("datasets: %zu\n", datasets_a.size());
  for (const auto& ma : methods_a) {
    for (const auto& mb : methods_b) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& d : datasets_a) {
        xs.push_back(a.at(ma).at(d));
        ys.push_back(b.at(mb).at(d));
      }
      const WilcoxonResult w = wilcoxon_signed_rank(xs, ys);
      std::printf("A:%s vs B:%s  n=%d  T=%.1f  p=%.6g\n", ma.c_str(), mb.c_str(), w.n_effective,
                  w.statistic, w.p_value);
    }
  }
  return kExitOk;
}

int cmd_synth(const std::string& out, const std::string& kind, std::uint64_t seed,
              int per_class) {
  MultiViewDataset ds;
  if (kind == "complementary") {
    ds = synthetic::complementary_views(per_class, seed, false);
  } else if (kind == "separable") {
    ds = synthetic::complementary_views(per_class, seed, true);
  } else if (kind == "msrc-shape") {
    ds = synthetic::shaped(210, {24, 48, 32, 16, 64}, 7, seed);
    ds.name = "msrc-shape";
  } else {
    throw ArgumentError("unknown synthetic kind '" + kind + "'");
  }
  save_dataset(ds, out);
  std::cerr << "wrote " << ds.name << " (" << ds.num_samples() << " samples) to " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive weighted multi-view LS-SVM classifier"};
  app.require_subcommand(1);

  std::string data, config, out, model, methods, method = "aw", kind = "complementary";
  std::vector<std::string> reports;
  std::uint64_t seed = 0;
  int per_class = 30;

  auto* train = app.add_subcommand("train", "Fit a model on a dataset directory");
  train->add_option("--data", data, "Dataset directory")->required();
  train->add_option("--config", config, "JSON run configuration");
  train->add_option("--out", out, "Model file to write")->required();
  train->add_option("--method", method, "aw, aw@T, bsv, early or late");

  auto* pred = app.add_subcommand("predict", "Score a dataset directory with a saved model");
  pred->add_option("--model", model, "Model file")->required();
  pred->add_option("--data", data, "Dataset directory (labels optional)")->required();
  pred->add_option("--out", out, "CSV file to write")->required();

  auto* tun = app.add_subcommand("tune", "Cross-validated random search on a dataset");
  tun->add_option("--data", data, "Dataset directory")->required();
  tun->add_option("--config", config, "JSON run configuration");
  tun->add_option("--out", out, "Tuning log to write")->required();
  tun->add_option("--method", method, "aw, aw@T, bsv, early or late");

  auto* bench = app.add_subcommand("benchmark", "Split, tune, refit and score several methods");
  bench->add_option("--data", data, "Dataset directory")->required();
  bench->add_option("--methods", methods, "Comma-separated methods, e.g. aw@2,aw@3,bsv,early,late")
      ->required();
  bench->add_option("--config", config, "JSON run configuration");
  bench->add_option("--out", out, "Report file to write")->required();

  auto* cmp = app.add_subcommand("compare", "Wilcoxon signed-rank tests between report sets");
  cmp->add_option("--reports", reports, "Two report files or directories")
      ->required()
      ->expected(2);

  auto* syn = app.add_subcommand("synth", "Write a synthetic dataset directory");
  syn->add_option("--out", out, "Directory to create")->required();
  syn->add_option("--kind", kind, "complementary, separable or msrc-shape");
  syn->add_option("--seed", seed, "Random seed");
  syn->add_option("--per-class", per_class, "Samples per class (complementary/separable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*train) return cmd_train(data, config, out, method);
    if (*pred) return cmd_predict(model, data, out);
    if (*tun) return cmd_tune(data, config, out, method);
    if (*bench) return cmd_benchmark(data, methods, config, out);
    if (*cmp) return cmd_compare(reports);
    if (*syn) return cmd_synth(out, kind, seed, per_class);
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericInputError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitValidation;
}

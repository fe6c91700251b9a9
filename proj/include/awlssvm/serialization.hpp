#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "awlssvm/eval.hpp"

namespace awlssvm {

inline constexpr int kFormatVersion = 1;

nlohmann::json to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchSpace& space);

nlohmann::json to_json(const AwModel& model);
AwModel aw_model_from_json(const nlohmann::json& j);

/// Model envelope: {"format_version", "kind", ...}; kind is "aw", "bsv",
/// "early_fusion" or "late_fusion".
nlohmann::json to_json(const TrainedModel& model);
TrainedModel trained_model_from_json(const nlohmann::json& j);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

nlohmann::json to_json(const BenchmarkReport& report);

/// One benchmark run: dataset, protocol settings, and every method's report.
nlohmann::json benchmark_document(const std::string& dataset, const SplitPlan& plan,
                                  const SearchSpace& space, const TrainConfig& base, int folds,
                                  std::span<const BenchmarkReport> reports);

/// Scores keyed by (dataset, method) read back from one or more benchmark documents.
struct ReportSummary {
  std::string dataset;
  std::string method;
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> split_scores;
};

/// Accepts a single benchmark document or a JSON array of them.
std::vector<ReportSummary> read_report_summaries(const nlohmann::json& doc);

}  // namespace awlssvm

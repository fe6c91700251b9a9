#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "awlssvm/adaptive.hpp"
#include "awlssvm/baselines.hpp"
#include "awlssvm/data.hpp"

namespace awlssvm {

enum class MethodKind { aw, bsv, early_fusion, late_fusion };

/// A method as named on the command line: "aw", "aw@T" (iterations fixed to T),
/// "bsv", "early", "late".
struct Method {
  MethodKind kind = MethodKind::aw;
  int iterations = 0;  ///< aw only; 0 keeps the configured T

  static Method parse(const std::string& name);
  std::string name() const;

  friend bool operator==(const Method&, const Method&) = default;
};

std::vector<Method> parse_method_list(const std::string& comma_separated);

/// A trained model of any method.
using TrainedModel = std::variant<AwModel, BaselineModel>;

/// `folds` and `seed` drive the inner view selection of bsv.
TrainedModel fit_method(const MultiViewDataset& train, const TrainConfig& config,
                        const Method& method, int folds, std::uint64_t seed);

Prediction predict(const TrainedModel& model, std::span<const Matrix> views);

/// Config actually used for `method` (applies the aw@T override).
TrainConfig effective_config(const TrainConfig& config, const Method& method);

/// Mean balanced accuracy over k stratified folds of `train`.
double kfold_cv(const MultiViewDataset& train, const TrainConfig& config, const Method& method,
                int k, std::uint64_t seed);

struct LogInterval {
  double lo = 1.0;
  double hi = 1.0;
  void validate(const char* what) const;
  friend bool operator==(const LogInterval&, const LogInterval&) = default;
};

/// Log-uniform random search over gamma, rho and an RBF bandwidth multiplier.
/// The bandwidth is multiplier * median pairwise distance of the training
/// features (standardized and concatenated when standardization is on).
struct SearchSpace {
  LogInterval gamma{1e-2, 1e3};
  LogInterval rho{1e-2, 1e3};
  LogInterval bandwidth{0.25, 4.0};
  int budget = 16;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

struct SplitPlan {
  double test_fraction = 0.2;
  std::vector<std::uint64_t> seeds{0, 1, 2};

  void validate() const;
};

struct Trial {
  int index = 0;
  TrainConfig config;
  double bandwidth_multiplier = 1.0;
  double cv_score = 0.0;
};

struct TuneResult {
  TrainConfig best;
  double best_score = 0.0;
  int best_index = 0;
  double median_distance = 1.0;
  std::vector<Trial> trials;  ///< in sampling order
};

/// Median Euclidean distance over all sample pairs; 1 when every pair coincides.
double median_pairwise_distance(const Matrix& features);

/// Evaluates `space.budget` sampled configurations with k-fold CV (fold seed
/// `space.seed`) and returns the best; ties go to the earliest trial. Fields
/// not searched (beta, iterations, kernel family, standardize) come from `base`.
TuneResult tune(const MultiViewDataset& train, const SearchSpace& space,
                const TrainConfig& base, const Method& method, int k);

/// Outcome of one split. Only the test views are supplied; test labels never
/// reach tuning or fitting.
struct SplitOutcome {
  TuneResult tuning;
  std::vector<int> predictions;
};

SplitOutcome run_split(const MultiViewDataset& train, std::span<const Matrix> test_views,
                       const SearchSpace& space, const TrainConfig& base, const Method& method,
                       int k);

struct SplitRecord {
  std::uint64_t seed = 0;
  double score = 0.0;
  TuneResult tuning;
};

struct BenchmarkReport {
  std::string dataset;
  std::string method;
  std::vector<SplitRecord> splits;
  double mean = 0.0;
  double std = 0.0;

  std::vector<double> scores() const;
};

std::vector<BenchmarkReport> benchmark(const MultiViewDataset& ds, const SplitPlan& plan,
                                       std::span<const Method> methods,
                                       const SearchSpace& space, const TrainConfig& base,
                                       int k);

/// "85.44(±4.23)": percentages with two decimals.
std::string format_cell(double mean, double std);

/// Rows are methods, columns are datasets, cells are format_cell values.
/// Missing combinations print "n/a".
std::string format_table(std::span<const BenchmarkReport> reports);

}  // namespace awlssvm

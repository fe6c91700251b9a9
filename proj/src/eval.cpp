#include "awlssvm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "awlssvm/errors.hpp"
#include "awlssvm/metrics.hpp"
#include "awlssvm/rng.hpp"

namespace awlssvm {

// ---------------------------------------------------------------------------
// Methods

Method Method::parse(const std::string& raw) {
  std::string name = raw;
  name.erase(std::remove_if(name.begin(), name.end(), [](char c) { return c == ' '; }),
             name.end());
  if (name == "aw") return {MethodKind::aw, 0};
  if (name.rfind("aw@", 0) == 0) {
    const std::string digits = name.substr(3);
    int t = 0;
    try {
      std::size_t used = 0;
      t = std::stoi(digits, &used);
      if (used != digits.size()) t = 0;
    } catch (const std::exception&) {
      t = 0;
    }
    if (t < 1) throw ArgumentError("method '" + raw + "': iteration count must be >= 1");
    return {MethodKind::aw, t};
  }
  if (name == "bsv") return {MethodKind::bsv, 0};
  if (name == "early") return {MethodKind::early_fusion, 0};
  if (name == "late") return {MethodKind::late_fusion, 0};
  throw ArgumentError("unknown method '" + raw + "' (expected aw, aw@T, bsv, early, late)");
}

std::string Method::name() const {
  switch (kind) {
    case MethodKind::aw:
      return iterations > 0 ? "aw@" + std::to_string(iterations) : "aw";
    case MethodKind::bsv:
      return "bsv";
    case MethodKind::early_fusion:
      return "early";
    case MethodKind::late_fusion:
      return "late";
  }
  return "?";
}

std::vector<Method> parse_method_list(const std::string& comma_separated) {
  std::vector<Method> methods;
  std::stringstream in(comma_separated);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) methods.push_back(Method::parse(item));
  }
  if (methods.empty()) throw ArgumentError("no methods given");
  return methods;
}

TrainConfig effective_config(const TrainConfig& config, const Method& method) {
  TrainConfig out = config;
  if (method.kind == MethodKind::aw && method.iterations > 0) out.iterations = method.iterations;
  return out;
}

TrainedModel fit_method(const MultiViewDataset& train, const TrainConfig& config,
                        const Method& method, int folds, std::uint64_t seed) {
  switch (method.kind) {
    case MethodKind::aw:
      return fit(train, effective_config(config, method));
    case MethodKind::bsv:
      return fit_bsv(train, config, folds, seed);
    case MethodKind::early_fusion:
      return fit_early_fusion(train, config);
    case MethodKind::late_fusion:
      return fit_late_fusion(train, config);
  }
  throw ArgumentError("fit_method: unknown method");
}

Prediction predict(const TrainedModel& model, std::span<const Matrix> views) {
  return std::visit([&](const auto& m) { return predict(m, views); }, model);
}

double kfold_cv(const MultiViewDataset& train, const TrainConfig& config, const Method& method,
                int k, std::uint64_t seed) {
  const auto folds = stratified_kfold(train.labels, train.num_classes, k, seed);
  double total = 0.0;
  for (const auto& test_rows : folds) {
    std::vector<bool> held(train.num_samples(), false);
    for (std::size_t r : test_rows) held[r] = true;
    std::vector<std::size_t> fit_rows;
    for (std::size_t r = 0; r < held.size(); ++r)
      if (!held[r]) fit_rows.push_back(r);

    const MultiViewDataset fit_part = train.subset(fit_rows);
    const MultiViewDataset eval_part = train.subset(test_rows);
    const TrainedModel model = fit_method(fit_part, config, method, k, seed);
    const Prediction pred = predict(model, eval_part.views);
    total += balanced_accuracy(eval_part.labels, pred.labels);
  }
  return total / static_cast<double>(folds.size());
}

// ---------------------------------------------------------------------------
// Search

void LogInterval::validate(const char* what) const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi >= lo)) {
    throw ArgumentError(std::string("search range '") + what +
                        "' must satisfy 0 < lo <= hi");
  }
}

void SearchSpace::validate() const {
  gamma.validate("gamma");
  rho.validate("rho");
  bandwidth.validate("bandwidth");
  if (budget < 1) throw ArgumentError("search budget must be >= 1");
}

void SplitPlan::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test_fraction must lie in (0, 1)");
  }
  if (seeds.empty()) throw ArgumentError("split plan needs at least one seed");
}

namespace {

double sample_log_uniform(Rng& rng, const LogInterval& range) {
  const double u = uniform_unit(rng);  // always drawn so the stream stays aligned
  if (range.lo == range.hi) return range.lo;
  const double log_lo = std::log(range.lo);
  const double log_hi = std::log(range.hi);
  return std::exp(log_lo + u * (log_hi - log_lo));
}

Matrix search_features(const MultiViewDataset& train, bool standardize) {
  if (!standardize) return concatenate_views(train.views);
  std::vector<Matrix> scaled;
  scaled.reserve(train.num_views());
  for (const Matrix& view : train.views) {
    scaled.push_back(standardize_apply(standardize_fit(view), view));
  }
  return concatenate_views(scaled);
}

}  // namespace

double median_pairwise_distance(const Matrix& features) {
  const Eigen::Index n = features.rows();
  if (n < 2) return 1.0;
  const Matrix xt = features.transpose();
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j + 1; i < n; ++i) dists.push_back((xt.col(i) - xt.col(j)).norm());
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
  double median = dists[mid];
  if (dists.size() % 2 == 0) {
    const double lower = *std::max_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  return median > 0.0 ? median : 1.0;
}

TuneResult tune(const MultiViewDataset& train, const SearchSpace& space,
                const TrainConfig& base, const Method& method, int k) {
  space.validate();
  base.validate();

  TuneResult result;
  result.median_distance = median_pairwise_distance(search_features(train, base.standardize));

  Rng rng(space.seed);
  for (int i = 0; i < space.budget; ++i) {
    Trial trial;
    trial.index = i;
    trial.config = base;
    trial.config.gamma = sample_log_uniform(rng, space.gamma);
    trial.config.rho = sample_log_uniform(rng, space.rho);
    trial.bandwidth_multiplier = sample_log_uniform(rng, space.bandwidth);
    if (base.kernel.family == KernelFamily::rbf) {
      trial.config.kernel.bandwidth = trial.bandwidth_multiplier * result.median_distance;
    }
    trial.cv_score = kfold_cv(train, trial.config, method, k, space.seed);
    if (i == 0 || trial.cv_score > result.best_score) {
      result.best = trial.config;
      result.best_score = trial.cv_score;
      result.best_index = i;
    }
    result.trials.push_back(trial);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Benchmark

SplitOutcome run_split(const MultiViewDataset& train, std::span<const Matrix> test_views,
                       const SearchSpace& space, const TrainConfig& base, const Method& method,
                       int k) {
  SplitOutcome out;
  out.tuning = tune(train, space, base, method, k);
  const TrainedModel model = fit_method(train, out.tuning.best, method, k, space.seed);
  out.predictions = predict(model, test_views).labels;
  return out;
}

std::vector<double> BenchmarkReport::scores() const {
  std::vector<double> values;
  values.reserve(splits.size());
  for (const SplitRecord& s : splits) values.push_back(s.score);
  return values;
}

std::vector<BenchmarkReport> benchmark(const MultiViewDataset& ds, const SplitPlan& plan,
                                       std::span<const Method> methods,
                                       const SearchSpace& space, const TrainConfig& base,
                                       int k) {
  plan.validate();
  space.validate();
  base.validate();
  ds.validate();

  std::vector<BenchmarkReport> reports(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    reports[m].dataset = ds.name;
    reports[m].method = methods[m].name();
  }
  for (std::uint64_t seed : plan.seeds) {
    const auto [train_rows, test_rows] =
        stratified_split_indices(ds.labels, ds.num_classes, plan.test_fraction, seed);
    const MultiViewDataset train = ds.subset(train_rows);
    const MultiViewDataset test = ds.subset(test_rows);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      SplitOutcome outcome = run_split(train, test.views, space, base, methods[m], k);
      SplitRecord record;
      record.seed = seed;
      record.score = balanced_accuracy(test.labels, outcome.predictions);
      record.tuning = std::move(outcome.tuning);
      reports[m].splits.push_back(std::move(record));
    }
  }
  for (BenchmarkReport& report : reports) {
    const auto values = report.scores();
    const MeanStd summary = mean_std(values);
    report.mean = summary.mean;
    report.std = summary.std;
  }
  return reports;
}

std::string format_cell(double mean, double std) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f(±%.2f)", 100.0 * mean, 100.0 * std);
  return buf;
}

std::string format_table(std::span<const BenchmarkReport> reports) {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  for (const BenchmarkReport& r : reports) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
      datasets.push_back(r.dataset);
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
  }
  auto cell = [&](const std::string& method, const std::string& dataset) -> std::string {
    for (const BenchmarkReport& r : reports)
      if (r.method == method && r.dataset == dataset) return format_cell(r.mean, r.std);
    return "n/a";
  };
  // The "±" sign is two bytes in UTF-8 but one column on screen.
  auto display_width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
    return w;
  };
  auto pad = [&](const std::string& s, std::size_t width) {
    return s + std::string(width > display_width(s) ? width - display_width(s) : 0, ' ');
  };

  std::size_t first_width = std::string("Method").size();
  for (const auto& m : methods) first_width = std::max(first_width, m.size());
  std::vector<std::size_t> widths;
  for (const auto& d : datasets) {
    std::size_t w = display_width(d);
    for (const auto& m : methods) w = std::max(w, display_width(cell(m, d)));
    widths.push_back(w);
  }

  std::string out;
  auto end_line = [&out] {
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  };
  out += pad("Method", first_width);
  for (std::size_t j = 0; j < datasets.size(); ++j) out += "  " + pad(datasets[j], widths[j]);
  end_line();
  for (const auto& m : methods) {
    out += pad(m, first_width);
    for (std::size_t j = 0; j < datasets.size(); ++j)
      out += "  " + pad(cell(m, datasets[j]), widths[j]);
    end_line();
  }
  return out;
}

}  // namespace awlssvm

#include "awlssvm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "awlssvm/errors.hpp"

namespace awlssvm {

double balanced_accuracy(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.empty()) throw ArgumentError("balanced_accuracy: empty input");
  if (truth.size() != predicted.size()) {
    throw InputShapeError("balanced_accuracy: length mismatch");
  }
  std::map<int, std::pair<std::size_t, std::size_t>> per_class;  // label -> (hits, total)
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [hits, total] = per_class[truth[i]];
    ++total;
    if (predicted[i] == truth[i]) ++hits;
  }
  double recall_sum = 0.0;
  for (const auto& [label, counts] : per_class) {
    recall_sum += static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return recall_sum / static_cast<double>(per_class.size());
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonMethod method) {
  if (a.size() != b.size()) throw InputShapeError("wilcoxon: length mismatch");
  if (a.empty()) throw ArgumentError("wilcoxon: empty input");

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (!std::isfinite(d)) throw NumericInputError("wilcoxon: non-finite difference");
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult result;
  result.n_effective = static_cast<int>(diffs.size());
  if (diffs.empty()) return result;

  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(diffs[i]) < std::abs(diffs[j]);
  });

  // Ranks are doubled so average ranks of ties stay integral.
  std::vector<long> twice_rank(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
    const long twice_avg = static_cast<long>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) twice_rank[order[k]] = twice_avg;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  long twice_pos = 0;
  long twice_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    twice_total += twice_rank[i];
    if (diffs[i] > 0.0) twice_pos += twice_rank[i];
  }
  const long twice_t = std::min(twice_pos, twice_total - twice_pos);
  result.statistic = static_cast<double>(twice_t) / 2.0;

  const bool exact =
      method == WilcoxonMethod::exact || (method == WilcoxonMethod::automatic && n <= 20);
  if (exact) {
    // Null distribution of the positive-rank sum: every sign pattern is equally
    // likely, so count subsets of ranks by their (doubled) sum.
    std::vector<double> ways(static_cast<std::size_t>(twice_total) + 1, 0.0);
    ways[0] = 1.0;
    long reach = 0;
    for (long r : twice_rank) {
      for (long s = reach; s >= 0; --s) {
        if (ways[static_cast<std::size_t>(s)] != 0.0) ways[static_cast<std::size_t>(s + r)] += ways[static_cast<std::size_t>(s)];
      }
      reach += r;
    }
    double tail = 0.0;
    for (long s = 0; s <= twice_t; ++s) tail += ways[static_cast<std::size_t>(s)];
    const double total_patterns = std::ldexp(1.0, static_cast<int>(n));
    result.p_value = std::min(1.0, 2.0 * tail / total_patterns);
  } else {
    const double nn = static_cast<double>(n);
    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
      result.p_value = 1.0;
    } else {
      // T <= mean, so the continuity correction moves it toward the mean.
      const double z = std::min(0.0, (result.statistic - mean + 0.5) / std::sqrt(var));
      result.p_value = std::min(1.0, 2.0 * normal_cdf(z));
    }
  }
  return result;
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

}  // namespace awlssvm

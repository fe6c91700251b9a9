#pragma once

#include <span>
#include <vector>

namespace awlssvm {

/// Mean per-class recall over the classes that occur in `truth`.
double balanced_accuracy(std::span<const int> truth, std::span<const int> predicted);

enum class WilcoxonMethod {
  automatic,  ///< exact for n <= 20 non-zero differences, normal approximation above
  exact,
  normal,
};

struct WilcoxonResult {
  double statistic = 0.0;  ///< T = min(W+, W-)
  double p_value = 1.0;    ///< two-sided
  int n_effective = 0;     ///< non-zero differences
};

/// Paired signed-rank test on a - b. Zero differences are dropped, tied |d|
/// receive average ranks. All-zero differences give T = 0, p = 1.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

/// Sample mean and standard deviation (n - 1 denominator; 0 for a single value).
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(std::span<const double> values);

}  // namespace awlssvm

#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the library's numeric code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Wilcoxon signed-rank by explicit enumeration of all 2^n sign patterns.
struct WilcoxonExact {
  double statistic;
  double p_value;
};

inline WilcoxonExact wilcoxon_enumerate(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) d.push_back(a[i] - b[i]);
  const std::size_t n = d.size();
  if (n == 0) return {0.0, 1.0};
  // average ranks by direct counting: rank = #smaller + (#equal + 1) / 2
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double smaller = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(d[j]) < std::abs(d[i])) smaller += 1;
      if (std::abs(d[j]) == std::abs(d[i])) equal += 1;
    }
    rank[i] = smaller + (equal + 1.0) / 2.0;
  }
  double pos = 0, neg = 0;
  for (std::size_t i = 0; i < n; ++i) (d[i] > 0 ? pos : neg) += rank[i];
  const double t = std::min(pos, neg);
  std::uint64_t at_most = 0;
  const std::uint64_t patterns = 1ULL << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ULL << i)) s += rank[i];
    if (s <= t + 1e-9) ++at_most;
  }
  const double p = std::min(1.0, 2.0 * static_cast<double>(at_most) / static_cast<double>(patterns));
  return {t, p};
}

/// Sample-weight update with explicit loops over u, u', k.
inline std::vector<double> update_weights_loops(const std::vector<std::vector<double>>& q,
                                                const std::vector<double>& s_prev, double beta,
                                                int t, std::size_t v) {
  const std::size_t num_views = q.size();
  const std::size_t n = s_prev.size();
  auto dist = [&](std::size_t x, std::size_t y) {
    double acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc += (q[x][k] - q[y][k]) * (q[x][k] - q[y][k]);
    return std::sqrt(acc);
  };
  double denom = 0;
  for (std::size_t up = 0; up < num_views; ++up) denom += dist(v, up);
  std::vector<double> out = s_prev;
  if (denom == 0.0) return out;
  double decay = 1.0;
  for (int i = 0; i < t - 2; ++i) decay *= beta;
  for (std::size_t k = 0; k < n; ++k) {
    double inc = 0;
    for (std::size_t u = 0; u < num_views; ++u) inc += dist(v, u) / denom * q[u][k];
    out[k] += decay * inc;
  }
  return out;
}

/// Mean per-class recall by counting.
inline double balanced_accuracy_counts(const std::vector<int>& truth, const std::vector<int>& pred) {
  std::map<int, int> total, hit;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    total[truth[i]]++;
    if (truth[i] == pred[i]) hit[truth[i]]++;
  }
  double sum = 0;
  for (auto& [c, n] : total) sum += static_cast<double>(hit[c]) / n;
  return sum / static_cast<double>(total.size());
}

inline Eigen::MatrixXd random_psd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, std::max(1, n / 2));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = g(rng);
  Eigen::MatrixXd k = a * a.transpose();
  return 0.5 * (k + k.transpose());
}

inline Eigen::VectorXd random_signs(int n, std::mt19937_64& rng) {
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = (rng() & 1) ? 1.0 : -1.0;
  y[0] = 1.0;
  y[n - 1] = -1.0;
  return y;
}

/// Residual of [[0, y^T], [y, Omega + diag(1/(gamma + rho s))]] [b; alpha] - [0; 1],
/// assembled as the full (N+1) matrix.
inline double bordered_residual_dense(const Eigen::MatrixXd& omega, const Eigen::VectorXd& y,
                                      double gamma, double rho, const Eigen::VectorXd& s,
                                      const Eigen::VectorXd& alpha, double b) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.block(0, 1, 1, n) = y.transpose();
  m.block(1, 0, n, 1) = y;
  m.block(1, 1, n, n) = omega;
  for (int k = 0; k < n; ++k) m(k + 1, k + 1) += 1.0 / (gamma + rho * s[k]);
  Eigen::VectorXd x(n + 1);
  x[0] = b;
  x.tail(n) = alpha;
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n + 1);
  rhs[0] = 0.0;
  return (m * x - rhs).cwiseAbs().maxCoeff();
}

}  // namespace oracle

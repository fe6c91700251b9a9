#pragma once

#include <span>
#include <vector>

#include "awlssvm/data.hpp"
#include "awlssvm/kernels.hpp"
#include "awlssvm/lssvm_solver.hpp"

namespace awlssvm {

/// Hyperparameters shared by every view and every iteration.
struct TrainConfig {
  double gamma = 1.0;
  double rho = 1.0;
  double beta = 0.7;
  int iterations = 2;  ///< T; T = 1 is plain one-vs-all LS-SVM per view
  KernelSpec kernel{};
  bool standardize = true;

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Per-(view, class) sample weights, indexed [view][class] -> length-N vector.
using SampleWeights = std::vector<std::vector<Vector>>;

/// N x C matrix: column c is +1 where label == c and -1 elsewhere.
Matrix encode_one_vs_all(std::span<const int> labels, int num_classes);

/// Keeps e_k where e_k >= 1 (y_k f(x_k) <= 0) and zeroes the rest.
Vector mask_misclassified(const Vector& e);

/// Weight update for view `v` before iteration `t` (t >= 2).
///
/// `masked_sq_errors[u]` holds the squared masked errors of view u from
/// iteration t-1. Each other view contributes in proportion to the Euclidean
/// distance between its squared masked errors and view v's own, normalised to
/// sum to one; the mixture is scaled by beta^(t-2) and added to `s_prev`. When
/// every distance is zero the increment is zero.
Vector update_weights(std::span<const Vector> masked_sq_errors, const Vector& s_prev,
                      double beta, int t, std::size_t v);

/// Normalised distance weights w_{vu} used by update_weights (all zero when the
/// distances all vanish).
Vector view_mixing_weights(std::span<const Vector> masked_sq_errors, std::size_t v);

/// Everything needed to score new samples with the averaged per-view decision rule.
struct AwModel {
  TrainConfig config;
  int num_classes = 0;
  std::vector<Matrix> train_views;  ///< standardized when config.standardize
  std::vector<StandardizationStats> stats;  ///< empty when standardization is off
  Matrix targets;  ///< one-vs-all encoding, N x C
  std::vector<std::vector<DualSolution>> solutions;  ///< [view][class], iteration T

  std::size_t num_views() const { return train_views.size(); }
  std::size_t num_samples() const {
    return static_cast<std::size_t>(targets.rows());
  }
};

/// Optional per-iteration record for inspection and tests.
struct FitTrace {
  /// solutions[t][v][c] for t = 0..T-1 (iteration t+1).
  std::vector<std::vector<std::vector<DualSolution>>> solutions;
  /// weights[t] are the weights used at iteration t+1; weights[0] is all zero.
  std::vector<SampleWeights> weights;
};

AwModel fit(const MultiViewDataset& train, const TrainConfig& config,
            FitTrace* trace = nullptr);

struct Prediction {
  std::vector<int> labels;
  Matrix scores;  ///< N_test x C
};

/// Averaged per-view soft scores; label = argmax with ties to the lowest class id.
Prediction predict(const AwModel& model, std::span<const Matrix> views);

/// Row-wise argmax; ties go to the lowest column.
std::vector<int> argmax_rows(const Matrix& scores);

}  // namespace awlssvm

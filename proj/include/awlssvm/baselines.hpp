#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "awlssvm/adaptive.hpp"

namespace awlssvm {

enum class BaselineKind { bsv, early_fusion, late_fusion };

const char* to_string(BaselineKind kind);
BaselineKind baseline_kind_from_string(const std::string& name);

/// Plain one-vs-all LS-SVM classifiers arranged as one of the comparison methods.
///
/// Every member is a single-view AwModel trained with T = 1:
///   bsv          one member on the selected view
///   early_fusion one member on the concatenation of all views
///   late_fusion  one member per view
struct BaselineModel {
  BaselineKind kind = BaselineKind::bsv;
  std::vector<AwModel> members;
  std::size_t selected_view = 0;  ///< bsv only
  std::size_t num_views = 0;      ///< views expected at predict time
  std::vector<double> view_scores;  ///< bsv only: CV balanced accuracy per view
};

/// Plain LS-SVM on one feature matrix (T forced to 1).
AwModel fit_single_view(const Matrix& features, std::span<const int> labels, int num_classes,
                        const TrainConfig& config);

/// Picks the view with the best `folds`-fold CV balanced accuracy on `train`
/// (ties to the lowest index) and refits it on all of `train`.
BaselineModel fit_bsv(const MultiViewDataset& train, const TrainConfig& config, int folds,
                      std::uint64_t seed = 0);

BaselineModel fit_early_fusion(const MultiViewDataset& train, const TrainConfig& config);

BaselineModel fit_late_fusion(const MultiViewDataset& train, const TrainConfig& config);

/// Majority vote over per-view labels. Ties go to the largest summed soft
/// score among the tied classes, then the lowest class id. `scores` receives
/// the summed per-view scores.
Prediction predict_late_fusion(const BaselineModel& model, std::span<const Matrix> views);

/// Dispatches on model.kind.
Prediction predict(const BaselineModel& model, std::span<const Matrix> views);

/// Vote resolution used by late fusion, exposed for direct testing.
/// `labels[v][i]` is view v's label for sample i; `summed_scores` is N x C.
std::vector<int> majority_vote(const std::vector<std::vector<int>>& labels,
                               const Matrix& summed_scores);

}  // namespace awlssvm

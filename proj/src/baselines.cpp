#include "awlssvm/baselines.hpp"

#include <string>

#include "awlssvm/errors.hpp"
#include "awlssvm/metrics.hpp"

namespace awlssvm {

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::bsv:
      return "bsv";
    case BaselineKind::early_fusion:
      return "early_fusion";
    case BaselineKind::late_fusion:
      return "late_fusion";
  }
  return "?";
}

BaselineKind baseline_kind_from_string(const std::string& name) {
  if (name == "bsv") return BaselineKind::bsv;
  if (name == "early_fusion") return BaselineKind::early_fusion;
  if (name == "late_fusion") return BaselineKind::late_fusion;
  throw ArgumentError("unknown baseline kind '" + name + "'");
}

AwModel fit_single_view(const Matrix& features, std::span<const int> labels, int num_classes,
                        const TrainConfig& config) {
  MultiViewDataset single;
  single.views.push_back(features);
  single.labels.assign(labels.begin(), labels.end());
  single.num_classes = num_classes;
  TrainConfig plain = config;
  plain.iterations = 1;
  return fit(single, plain);
}

namespace {

double cv_single_view(const MultiViewDataset& train, std::size_t view,
                      const TrainConfig& config, int folds, std::uint64_t seed) {
  const auto fold_rows = stratified_kfold(train.labels, train.num_classes, folds, seed);
  double total = 0.0;
  for (const auto& test_rows : fold_rows) {
    std::vector<bool> held(train.num_samples(), false);
    for (std::size_t r : test_rows) held[r] = true;
    std::vector<std::size_t> train_rows;
    for (std::size_t r = 0; r < held.size(); ++r)
      if (!held[r]) train_rows.push_back(r);

    const MultiViewDataset fit_part = train.subset(train_rows);
    const MultiViewDataset eval_part = train.subset(test_rows);
    const AwModel m =
        fit_single_view(fit_part.views[view], fit_part.labels, train.num_classes, config);
    const Prediction pred = predict(m, std::span(&eval_part.views[view], 1));
    total += balanced_accuracy(eval_part.labels, pred.labels);
  }
  return total / static_cast<double>(fold_rows.size());
}

}  // namespace

BaselineModel fit_bsv(const MultiViewDataset& train, const TrainConfig& config, int folds,
                      std::uint64_t seed) {
  if (folds < 2) throw ArgumentError("fit_bsv: folds must be >= 2");
  train.validate_shape();
  BaselineModel model;
  model.kind = BaselineKind::bsv;
  model.num_views = train.num_views();
  for (std::size_t v = 0; v < train.num_views(); ++v) {
    model.view_scores.push_back(cv_single_view(train, v, config, folds, seed));
  }
  std::size_t best = 0;
  for (std::size_t v = 1; v < model.view_scores.size(); ++v) {
    if (model.view_scores[v] > model.view_scores[best]) best = v;
  }
  model.selected_view = best;
  model.members.push_back(
      fit_single_view(train.views[best], train.labels, train.num_classes, config));
  return model;
}

BaselineModel fit_early_fusion(const MultiViewDataset& train, const TrainConfig& config) {
  train.validate_shape();
  BaselineModel model;
  model.kind = BaselineKind::early_fusion;
  model.num_views = train.num_views();
  model.members.push_back(fit_single_view(concatenate_views(train.views), train.labels,
                                          train.num_classes, config));
  return model;
}

BaselineModel fit_late_fusion(const MultiViewDataset& train, const TrainConfig& config) {
  train.validate_shape();
  BaselineModel model;
  model.kind = BaselineKind::late_fusion;
  model.num_views = train.num_views();
  for (const Matrix& view : train.views) {
    model.members.push_back(fit_single_view(view, train.labels, train.num_classes, config));
  }
  return model;
}

std::vector<int> majority_vote(const std::vector<std::vector<int>>& labels,
                               const Matrix& summed_scores) {
  const auto n = static_cast<std::size_t>(summed_scores.rows());
  const auto num_classes = summed_scores.cols();
  std::vector<int> out(n, 0);
  std::vector<int> votes(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const auto& view_labels : labels) {
      if (view_labels.size() != n) throw InputShapeError("majority_vote: length mismatch");
      ++votes[static_cast<std::size_t>(view_labels[i])];
    }
    const auto row = static_cast<Eigen::Index>(i);
    int best = 0;
    for (int c = 1; c < num_classes; ++c) {
      if (votes[c] > votes[best] ||
          (votes[c] == votes[best] && summed_scores(row, c) > summed_scores(row, best))) {
        best = c;
      }
    }
    out[i] = best;
  }
  return out;
}

Prediction predict_late_fusion(const BaselineModel& model, std::span<const Matrix> views) {
  if (views.size() != model.members.size()) {
    throw InputShapeError("late fusion: model has " + std::to_string(model.members.size()) +
                          " views, input has " + std::to_string(views.size()));
  }
  Prediction out;
  std::vector<std::vector<int>> per_view;
  for (std::size_t v = 0; v < views.size(); ++v) {
    Prediction p = predict(model.members[v], views.subspan(v, 1));
    if (v == 0) {
      out.scores = p.scores;
    } else {
      out.scores += p.scores;
    }
    per_view.push_back(std::move(p.labels));
  }
  out.labels = majority_vote(per_view, out.scores);
  return out;
}

Prediction predict(const BaselineModel& model, std::span<const Matrix> views) {
  if (views.size() != model.num_views) {
    throw InputShapeError("predict: model expects " + std::to_string(model.num_views) +
                          " views, input has " + std::to_string(views.size()));
  }
  switch (model.kind) {
    case BaselineKind::bsv:
      return predict(model.members.at(0), views.subspan(model.selected_view, 1));
    case BaselineKind::early_fusion: {
      const Matrix joined = concatenate_views(views);
      return predict(model.members.at(0), std::span(&joined, 1));
    }
    case BaselineKind::late_fusion:
      return predict_late_fusion(model, views);
  }
  throw ArgumentError("predict: unknown baseline kind");
}

}  // namespace awlssvm

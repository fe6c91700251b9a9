#include "awlssvm/adaptive.hpp"

#include <cmath>
#include <string>

#include "awlssvm/errors.hpp"

namespace awlssvm {

void TrainConfig::validate() const {
  if (!(std::isfinite(gamma) && gamma > 0.0)) {
    throw ArgumentError("gamma must be finite and > 0");
  }
  if (!(std::isfinite(rho) && rho >= 0.0)) throw ArgumentError("rho must be finite and >= 0");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ArgumentError("beta must lie in (0, 1), got " + std::to_string(beta));
  }
  if (iterations < 1) throw ArgumentError("iterations must be >= 1");
  kernel.validate();
}

Matrix encode_one_vs_all(std::span<const int> labels, int num_classes) {
  if (num_classes < 1) throw ArgumentError("encode_one_vs_all: num_classes must be >= 1");
  Matrix y = Matrix::Constant(static_cast<Eigen::Index>(labels.size()), num_classes, -1.0);
  std::vector<bool> seen(static_cast<std::size_t>(num_classes), false);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c >= num_classes) {
      throw ArgumentError("encode_one_vs_all: label " + std::to_string(c) + " out of range");
    }
    y(static_cast<Eigen::Index>(i), c) = 1.0;
    seen[c] = true;
  }
  for (int c = 0; c < num_classes; ++c) {
    if (!seen[c]) {
      throw DegenerateLabelsError("class " + std::to_string(c) + " has no training samples");
    }
  }
  return y;
}

Vector mask_misclassified(const Vector& e) {
  return (e.array() >= 1.0).select(e, 0.0);
}

Vector view_mixing_weights(std::span<const Vector> masked_sq_errors, std::size_t v) {
  const std::size_t num_views = masked_sq_errors.size();
  if (v >= num_views) throw InputShapeError("update_weights: view index out of range");
  const Vector& own = masked_sq_errors[v];
  Vector w(static_cast<Eigen::Index>(num_views));
  for (std::size_t u = 0; u < num_views; ++u) {
    if (masked_sq_errors[u].size() != own.size()) {
      throw InputShapeError("update_weights: error vectors differ in length");
    }
    w[static_cast<Eigen::Index>(u)] = u == v ? 0.0 : (own - masked_sq_errors[u]).norm();
  }
  const double total = w.sum();
  if (total > 0.0) {
    w /= total;
  } else {
    w.setZero();
  }
  return w;
}

Vector update_weights(std::span<const Vector> masked_sq_errors, const Vector& s_prev,
                      double beta, int t, std::size_t v) {
  if (t < 2) throw ArgumentError("update_weights: t must be >= 2");
  const Vector w = view_mixing_weights(masked_sq_errors, v);
  if (s_prev.size() != masked_sq_errors[v].size()) {
    throw InputShapeError("update_weights: previous weights have the wrong length");
  }
  Vector increment = Vector::Zero(s_prev.size());
  for (std::size_t u = 0; u < masked_sq_errors.size(); ++u) {
    const double wu = w[static_cast<Eigen::Index>(u)];
    if (wu != 0.0) increment += wu * masked_sq_errors[u];
  }
  return s_prev + std::pow(beta, t - 2) * increment;
}

AwModel fit(const MultiViewDataset& train, const TrainConfig& config, FitTrace* trace) {
  config.validate();
  train.validate_shape();

  AwModel model;
  model.config = config;
  model.num_classes = train.num_classes;
  model.targets = encode_one_vs_all(train.labels, train.num_classes);

  const std::size_t num_views = train.num_views();
  const auto num_classes = static_cast<std::size_t>(train.num_classes);
  const auto n = static_cast<Eigen::Index>(train.num_samples());

  model.train_views.reserve(num_views);
  for (const Matrix& view : train.views) {
    if (config.standardize) {
      model.stats.push_back(standardize_fit(view));
      model.train_views.push_back(standardize_apply(model.stats.back(), view));
    } else {
      model.train_views.push_back(view);
    }
  }

  std::vector<GramMatrix> grams;
  grams.reserve(num_views);
  for (const Matrix& x : model.train_views) grams.push_back(gram_matrix(config.kernel, x, x));

  SampleWeights weights(num_views, std::vector<Vector>(num_classes, Vector::Zero(n)));
  std::vector<std::vector<DualSolution>> solutions(num_views,
                                                   std::vector<DualSolution>(num_classes));
  if (trace) *trace = FitTrace{};

  for (int t = 1; t <= config.iterations; ++t) {
    if (trace) trace->weights.push_back(weights);
    for (std::size_t v = 0; v < num_views; ++v) {
      for (std::size_t c = 0; c < num_classes; ++c) {
        WeightedProblem p;
        p.y = model.targets.col(static_cast<Eigen::Index>(c));
        p.omega = labeled_kernel(grams[v], p.y);
        p.gamma = config.gamma;
        p.rho = config.rho;
        p.s = weights[v][c];
        solutions[v][c] = solve_dual(p);
      }
    }
    if (trace) trace->solutions.push_back(solutions);
    if (t == config.iterations) break;

    // All views' errors for a class are needed before any view's weights move.
    for (std::size_t c = 0; c < num_classes; ++c) {
      std::vector<Vector> masked_sq(num_views);
      for (std::size_t u = 0; u < num_views; ++u) {
        masked_sq[u] = mask_misclassified(solutions[u][c].e).array().square();
      }
      for (std::size_t v = 0; v < num_views; ++v) {
        weights[v][c] = update_weights(masked_sq, weights[v][c], config.beta, t + 1, v);
      }
    }
  }

  model.solutions = std::move(solutions);
  return model;
}

std::vector<int> argmax_rows(const Matrix& scores) {
  std::vector<int> labels(static_cast<std::size_t>(scores.rows()), 0);
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(i, c) > scores(i, best)) best = c;
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return labels;
}

Prediction predict(const AwModel& model, std::span<const Matrix> views) {
  const std::size_t num_views = model.num_views();
  if (views.size() != num_views) {
    throw InputShapeError("predict: model has " + std::to_string(num_views) +
                          " views, input has " + std::to_string(views.size()));
  }
  const Eigen::Index n_test = views.empty() ? 0 : views[0].rows();
  Matrix scores = Matrix::Zero(n_test, model.num_classes);
  for (std::size_t v = 0; v < num_views; ++v) {
    if (views[v].cols() != model.train_views[v].cols()) {
      throw InputShapeError("predict: view " + std::to_string(v) + " has " +
                            std::to_string(views[v].cols()) + " features, model expects " +
                            std::to_string(model.train_views[v].cols()));
    }
    if (views[v].rows() != n_test) {
      throw InputShapeError("predict: views disagree on sample count");
    }
    const Matrix x = model.config.standardize ? standardize_apply(model.stats[v], views[v])
                                              : views[v];
    const GramMatrix k = gram_matrix(model.config.kernel, x, model.train_views[v]);
    for (int c = 0; c < model.num_classes; ++c) {
      const DualSolution& sol = model.solutions[v][static_cast<std::size_t>(c)];
      scores.col(c) += decision_scores(sol.alpha, sol.b, model.targets.col(c), k);
    }
  }
  scores /= static_cast<double>(num_views);
  return {argmax_rows(scores), std::move(scores)};
}

}  // namespace awlssvm

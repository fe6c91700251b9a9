#include <random>

#include <gtest/gtest.h>

#include "awlssvm/baselines.hpp"
#include "awlssvm/errors.hpp"
#include "awlssvm/metrics.hpp"
#include "awlssvm/synthetic.hpp"

using namespace awlssvm;

namespace {

TrainConfig plain_config() {
  TrainConfig c;
  c.gamma = 10.0;
  c.rho = 0.0;
  c.iterations = 1;
  c.kernel = KernelSpec::rbf(1.0);
  return c;
}

Matrix noise(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

MultiViewDataset single_view(const MultiViewDataset& ds, std::size_t v) {
  MultiViewDataset out = ds;
  out.views = {ds.views[v]};
  out.view_names = {ds.view_names[v]};
  return out;
}

}  // namespace

TEST(Baselines, AllReduceToPlainLssvmForOneView) {
  const MultiViewDataset ds = single_view(synthetic::complementary_views(12, 1), 0);
  const AwModel reference = fit(ds, plain_config());
  const Prediction expected = predict(reference, ds.views);
  for (const BaselineModel& m :
       {fit_bsv(ds, plain_config(), 3), fit_early_fusion(ds, plain_config()),
        fit_late_fusion(ds, plain_config())}) {
    const Prediction got = predict(m, ds.views);
    EXPECT_EQ(got.labels, expected.labels) << to_string(m.kind);
    EXPECT_EQ(got.scores, expected.scores) << to_string(m.kind);
  }
  EXPECT_EQ(fit_bsv(ds, plain_config(), 3).selected_view, 0u);
}

TEST(Bsv, PicksInformativeViewOverNoise) {
  MultiViewDataset ds = synthetic::complementary_views(20, 2, true);
  ds.views[1] = noise(60, 2, 99);
  const BaselineModel m = fit_bsv(ds, plain_config(), 3);
  EXPECT_EQ(m.selected_view, 0u);
  EXPECT_GT(m.view_scores[0], 0.9);
  EXPECT_LT(m.view_scores[1], 0.6);
  EXPECT_EQ(m.members.size(), 1u);
}

TEST(Bsv, SelectionInvariantToOtherViewOrder) {
  MultiViewDataset base = synthetic::complementary_views(20, 3, true);
  const Matrix informative = base.views[0];
  const Matrix n1 = noise(60, 2, 5);
  const Matrix n2 = noise(60, 3, 6);
  MultiViewDataset a = base;
  a.views = {n1, informative, n2};
  a.view_names = {"n1", "x", "n2"};
  MultiViewDataset b = base;
  b.views = {n2, informative, n1};
  b.view_names = {"n2", "x", "n1"};
  EXPECT_EQ(fit_bsv(a, plain_config(), 3).selected_view, 1u);
  EXPECT_EQ(fit_bsv(b, plain_config(), 3).selected_view, 1u);
}

TEST(Bsv, DuplicateViewsTieToFirst) {
  MultiViewDataset ds = synthetic::complementary_views(10, 4);
  ds.views[1] = ds.views[0];
  EXPECT_EQ(fit_bsv(ds, plain_config(), 3).selected_view, 0u);
  EXPECT_THROW(fit_bsv(ds, plain_config(), 1), ArgumentError);
}

TEST(EarlyFusion, ConcatenatesAndMatchesExternalConcatenation) {
  MultiViewDataset ds = synthetic::complementary_views(10, 5);
  ds.views = {noise(30, 3, 1) + ds.views[0] * Matrix::Ones(2, 3),
              noise(30, 4, 2) + ds.views[1] * Matrix::Ones(2, 4)};
  const BaselineModel m = fit_early_fusion(ds, plain_config());
  ASSERT_EQ(m.members.size(), 1u);
  EXPECT_EQ(m.members[0].train_views[0].cols(), 7);

  Matrix joined(30, 7);
  joined << ds.views[0], ds.views[1];
  MultiViewDataset flat = ds;
  flat.views = {joined};
  flat.view_names = {"joined"};
  const AwModel reference = fit(flat, plain_config());
  EXPECT_EQ(predict(m, ds.views).labels, predict(reference, flat.views).labels);
  EXPECT_EQ(predict(m, ds.views).scores, predict(reference, flat.views).scores);
}

TEST(EarlyFusion, AccuracyInvariantToViewOrder) {
  const MultiViewDataset ds = synthetic::complementary_views(20, 6);
  MultiViewDataset swapped = ds;
  std::swap(swapped.views[0], swapped.views[1]);
  const double acc = balanced_accuracy(
      ds.labels, predict(fit_early_fusion(ds, plain_config()), ds.views).labels);
  const double acc_swapped = balanced_accuracy(
      ds.labels, predict(fit_early_fusion(swapped, plain_config()), swapped.views).labels);
  EXPECT_NEAR(acc, acc_swapped, 1e-12);
}

TEST(LateFusion, MajorityVote) {
  Matrix scores = Matrix::Zero(1, 2);
  EXPECT_EQ(majority_vote({{0}, {0}, {1}}, scores), (std::vector<int>{0}));
  scores << -1.0, 5.0;
  EXPECT_EQ(majority_vote({{0}, {0}, {1}}, scores), (std::vector<int>{0}));
}

TEST(LateFusion, TieBreaksOnSummedScoresThenLowestId) {
  Matrix scores(3, 3);
  scores << 0.2, 0.9, -1.0,   // tie 0 vs 1 -> 1 has the larger sum
      0.4, 0.1, 0.0,          // tie 0 vs 1 -> 0
      0.5, 0.5, 0.7;          // tie 0 vs 1 with equal sums -> 0; class 2 got no vote
  const std::vector<std::vector<int>> labels{{0, 0, 0}, {1, 1, 1}};
  EXPECT_EQ(majority_vote(labels, scores), (std::vector<int>{1, 0, 0}));
}

TEST(LateFusion, TwoDisagreeingViewsFollowSummedScores) {
  const MultiViewDataset ds = synthetic::complementary_views(15, 7);
  const BaselineModel m = fit_late_fusion(ds, plain_config());
  const Prediction fused = predict(m, ds.views);
  const Prediction p0 = predict(m.members[0], std::span(&ds.views[0], 1));
  const Prediction p1 = predict(m.members[1], std::span(&ds.views[1], 1));
  int disagreements = 0;
  for (std::size_t i = 0; i < ds.num_samples(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    if (p0.labels[i] == p1.labels[i]) {
      EXPECT_EQ(fused.labels[i], p0.labels[i]);
      continue;
    }
    ++disagreements;
    const int a = p0.labels[i];
    const int b = p1.labels[i];
    const double sa = p0.scores(row, a) + p1.scores(row, a);
    const double sb = p0.scores(row, b) + p1.scores(row, b);
    const int expected = sa > sb ? a : (sb > sa ? b : std::min(a, b));
    EXPECT_EQ(fused.labels[i], expected);
  }
  EXPECT_GT(disagreements, 0);
}

TEST(Baselines, ViewCountMismatch) {
  const MultiViewDataset ds = synthetic::complementary_views(5, 8);
  const BaselineModel m = fit_late_fusion(ds, plain_config());
  EXPECT_THROW(predict(m, std::span(ds.views).first(1)), InputShapeError);
  const BaselineModel e = fit_early_fusion(ds, plain_config());
  EXPECT_THROW(predict(e, std::span(ds.views).first(1)), InputShapeError);
}

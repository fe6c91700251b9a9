#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "awlssvm/errors.hpp"
#include "awlssvm/lssvm_solver.hpp"
#include "oracles.hpp"

using namespace awlssvm;

namespace {

WeightedProblem hand_instance(double gamma = 1.0, double rho = 0.0) {
  WeightedProblem p;
  p.omega = Matrix::Identity(2, 2);
  p.y = Vector(2);
  p.y << 1, -1;
  p.gamma = gamma;
  p.rho = rho;
  p.s = Vector::Zero(2);
  return p;
}

WeightedProblem random_problem(int n, std::mt19937_64& rng, double gamma = 10.0,
                               double rho = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  WeightedProblem p;
  p.y = oracle::random_signs(n, rng);
  p.omega = labeled_kernel(oracle::random_psd(n, rng), p.y);
  p.gamma = gamma;
  p.rho = rho;
  p.s = Vector(n);
  for (int k = 0; k < n; ++k) p.s[k] = unit(rng);
  return p;
}

}  // namespace

TEST(SolveDual, HandSolvedTwoPoint) {
  // [[0,1,-1],[1,2,0],[-1,0,2]] [b; a] = [0; 1; 1] -> a = (0.5, 0.5), b = 0
  const DualSolution sol = solve_dual(hand_instance());
  EXPECT_NEAR(sol.alpha[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.alpha[1], 0.5, 1e-12);
  EXPECT_NEAR(sol.b, 0.0, 1e-12);
  EXPECT_NEAR(sol.e[0], 0.5, 1e-12);
  EXPECT_NEAR(sol.e[1], 0.5, 1e-12);
}

TEST(SolveDual, ZeroWeightsIgnoreRho) {
  const DualSolution plain = solve_dual(hand_instance(1.0, 0.0));
  const DualSolution weighted = solve_dual(hand_instance(1.0, 2.0));
  EXPECT_EQ(plain.alpha, weighted.alpha);
  EXPECT_EQ(plain.b, weighted.b);
}

TEST(SolveDual, RandomResidualAndKkt) {
  std::mt19937_64 rng(20);
  const WeightedProblem p = random_problem(20, rng);
  const DualSolution sol = solve_dual(p);
  EXPECT_LE(oracle::bordered_residual_dense(p.omega, p.y, p.gamma, p.rho, p.s, sol.alpha, sol.b),
            1e-8);
  EXPECT_LE(bordered_residual(p, sol.alpha, sol.b), 1e-8 * 21);
  EXPECT_LE(std::abs(sol.alpha.dot(p.y)), 1e-8 * sol.alpha.lpNorm<1>());
  const Vector kkt = sol.alpha.array() / (p.gamma + p.rho * p.s.array());
  for (int k = 0; k < 20; ++k) {
    EXPECT_NEAR(sol.e[k], kkt[k], 1e-8 * std::max(1.0, std::abs(kkt[k])));
  }
}

TEST(SolveDual, ResidualAcrossSizes) {
  std::mt19937_64 rng(99);
  for (int n : {2, 10, 50, 200}) {
    for (int trial = 0; trial < 5; ++trial) {
      const WeightedProblem p = random_problem(n, rng, 0.1 + trial * 5.0, trial * 0.7);
      const DualSolution sol = solve_dual(p);
      EXPECT_LE(bordered_residual(p, sol.alpha, sol.b), 1e-8 * (n + 1)) << "n=" << n;
    }
  }
}

TEST(SolveDual, ScalingPreservesTrainingSignsOnHandInstance) {
  const WeightedProblem base = hand_instance(1.0, 0.5);
  const DualSolution s1 = solve_dual(base);
  const DualSolution s2 = solve_dual(hand_instance(7.0, 3.5));
  EXPECT_NE(s1.alpha, s2.alpha);
  const Vector y_train = base.y;
  const Vector f1 = decision_scores(s1.alpha, s1.b, y_train, Matrix::Identity(2, 2));
  const Vector f2 = decision_scores(s2.alpha, s2.b, y_train, Matrix::Identity(2, 2));
  for (int k = 0; k < 2; ++k) EXPECT_EQ(f1[k] > 0, f2[k] > 0);
}

TEST(SolveDual, Errors) {
  WeightedProblem p = hand_instance();
  p.y << 1, 1;
  EXPECT_THROW(solve_dual(p), DegenerateLabelsError);
  p = hand_instance();
  p.gamma = 0.0;
  EXPECT_THROW(solve_dual(p), ArgumentError);
  p = hand_instance();
  p.rho = -1.0;
  EXPECT_THROW(solve_dual(p), ArgumentError);
  p = hand_instance();
  p.s[0] = -0.1;
  EXPECT_THROW(solve_dual(p), NumericInputError);
  p = hand_instance();
  p.s = Vector::Zero(3);
  EXPECT_THROW(solve_dual(p), InputShapeError);
  p = hand_instance();
  p.y[1] = 0.5;
  EXPECT_THROW(solve_dual(p), ArgumentError);
  p = hand_instance();
  p.omega(0, 1) = std::nan("");
  EXPECT_THROW(solve_dual(p), NumericInputError);
}

TEST(SolveDual, IndefiniteBlockFailsAfterJitter) {
  WeightedProblem p = hand_instance();
  p.omega << -5.0, 0.0, 0.0, -5.0;
  EXPECT_THROW(solve_dual(p), SolverFailure);
}

TEST(TrainingErrors, HandInstanceAndLargeGamma) {
  const WeightedProblem p = hand_instance();
  Vector alpha(2);
  alpha << 0.5, 0.5;
  const Vector e = training_errors(p, alpha, 0.0);
  EXPECT_NEAR(e[0], 0.5, 1e-15);
  EXPECT_NEAR(e[1], 0.5, 1e-15);

  const DualSolution stiff = solve_dual(hand_instance(1000.0, 0.0));
  EXPECT_LE(stiff.e.cwiseAbs().maxCoeff(), 2e-3);

  EXPECT_THROW(training_errors(p, Vector::Zero(3), 0.0), InputShapeError);
}

TEST(DecisionScores, HandInstanceTrainingPoints) {
  const WeightedProblem p = hand_instance();
  const DualSolution sol = solve_dual(p);
  const Vector f = decision_scores(sol.alpha, sol.b, p.y, Matrix::Identity(2, 2));
  EXPECT_NEAR(f[0], 0.5, 1e-12);
  EXPECT_NEAR(f[1], -0.5, 1e-12);
  // e = 1 - y * f
  EXPECT_NEAR(sol.e[0], 1.0 - p.y[0] * f[0], 1e-12);
  EXPECT_NEAR(sol.e[1], 1.0 - p.y[1] * f[1], 1e-12);
}

TEST(DecisionScores, ZeroAlphaGivesBiasAndDuplicatesMatch) {
  Matrix k(3, 2);
  k << 0.1, 0.9, 0.4, 0.2, 0.1, 0.9;
  Vector y(2);
  y << 1, -1;
  const Vector f0 = decision_scores(Vector::Zero(2), 0.25, y, k);
  EXPECT_TRUE((f0.array() == 0.25).all());
  Vector alpha(2);
  alpha << 0.3, 0.7;
  const Vector f = decision_scores(alpha, -0.1, y, k);
  EXPECT_EQ(f[0], f[2]);
  EXPECT_THROW(decision_scores(alpha, 0.0, y, Matrix::Zero(3, 3)), InputShapeError);
}

#include "awlssvm/lssvm_solver.hpp"

#include <cmath>
#include <string>

#include "awlssvm/errors.hpp"

namespace awlssvm {

void WeightedProblem::validate() const {
  const Eigen::Index n = y.size();
  if (omega.rows() != n || omega.cols() != n) {
    throw InputShapeError("weighted problem: omega is " + std::to_string(omega.rows()) + "x" +
                          std::to_string(omega.cols()) + " but y has length " +
                          std::to_string(n));
  }
  if (s.size() != n) {
    throw InputShapeError("weighted problem: sample weights have length " +
                          std::to_string(s.size()) + ", expected " + std::to_string(n));
  }
  if (!(std::isfinite(gamma) && gamma > 0.0)) throw ArgumentError("gamma must be > 0");
  if (!(std::isfinite(rho) && rho >= 0.0)) throw ArgumentError("rho must be >= 0");
  if (!omega.allFinite()) throw NumericInputError("weighted problem: non-finite omega");
  if (!s.allFinite() || (s.array() < 0.0).any()) {
    throw NumericInputError("weighted problem: sample weights must be finite and >= 0");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (y[k] == 1.0) {
      has_pos = true;
    } else if (y[k] == -1.0) {
      has_neg = true;
    } else {
      throw ArgumentError("weighted problem: label at " + std::to_string(k) +
                          " is not +1 or -1");
    }
  }
  if (n < 2 || !has_pos || !has_neg) {
    throw DegenerateLabelsError("binary subproblem needs N >= 2 with both label signs");
  }
}

Vector training_errors(const WeightedProblem& p, const Vector& alpha, double b) {
  if (alpha.size() != p.size() || p.omega.cols() != alpha.size()) {
    throw InputShapeError("training_errors: alpha length " + std::to_string(alpha.size()) +
                          " does not match N=" + std::to_string(p.size()));
  }
  return Vector::Ones(p.size()) - p.omega * alpha - b * p.y;
}

Vector decision_scores(const Vector& alpha, double b, const Vector& y_train,
                       const GramMatrix& k_test_train) {
  if (k_test_train.cols() != alpha.size() || y_train.size() != alpha.size()) {
    throw InputShapeError("decision_scores: kernel has " + std::to_string(k_test_train.cols()) +
                          " columns for " + std::to_string(alpha.size()) + " coefficients");
  }
  const Vector signed_alpha = alpha.cwiseProduct(y_train);
  return (k_test_train * signed_alpha).array() + b;
}

double bordered_residual(const WeightedProblem& p, const Vector& alpha, double b) {
  const Vector lambda = (p.gamma + p.rho * p.s.array()).inverse();
  const double border = p.y.dot(alpha);
  const Vector body = p.y * b + p.omega * alpha + lambda.cwiseProduct(alpha) -
                      Vector::Ones(p.size());
  return std::max(std::abs(border), body.cwiseAbs().maxCoeff());
}

DualSolution solve_dual(const WeightedProblem& p) {
  p.validate();
  const Eigen::Index n = p.size();

  Matrix h = p.omega;
  h.diagonal().array() += (p.gamma + p.rho * p.s.array()).inverse();

  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-10 * h.trace() / static_cast<double>(n);
    h.diagonal().array() += jitter;
    llt.compute(h);
    if (llt.info() != Eigen::Success) {
      throw SolverFailure("solve_dual: Omega + Lambda is not positive definite");
    }
  }

  // H eta = y, H nu = 1; the border row y^T alpha = 0 fixes b.
  Matrix rhs(n, 2);
  rhs.col(0) = p.y;
  rhs.col(1).setOnes();
  const Matrix sol = llt.solve(rhs);
  const double denom = p.y.dot(sol.col(0));
  if (!std::isfinite(denom) || denom == 0.0) {
    throw SolverFailure("solve_dual: singular border (y^T H^-1 y = 0)");
  }

  DualSolution out;
  out.b = p.y.dot(sol.col(1)) / denom;
  out.alpha = sol.col(1) - out.b * sol.col(0);
  if (!out.alpha.allFinite() || !std::isfinite(out.b)) {
    throw SolverFailure("solve_dual: non-finite solution");
  }
  out.e = training_errors(p, out.alpha, out.b);
  return out;
}

}  // namespace awlssvm

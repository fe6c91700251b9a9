#pragma once

#include "awlssvm/kernels.hpp"

namespace awlssvm {

/// One binary LS-SVM subproblem with per-sample extra error penalties.
///
/// The regularised block of the dual system is Omega + diag(1 / (gamma + rho * s_k)).
/// With rho == 0 or s == 0 this is the classic unweighted LS-SVM.
struct WeightedProblem {
  Matrix omega;  ///< labeled kernel, y_i y_j K_ij
  Vector y;      ///< +1 / -1
  double gamma = 1.0;
  double rho = 0.0;
  Vector s;  ///< nonnegative sample weights, length N

  /// Checks shapes, parameter ranges, label values and finiteness.
  void validate() const;

  Eigen::Index size() const { return y.size(); }
};

struct DualSolution {
  Vector alpha;
  double b = 0.0;
  Vector e;  ///< training errors 1 - y_k f(x_k)
};

/// Solves [[0, y^T], [y, Omega + Lambda]] [b; alpha] = [0; 1].
///
/// Factors the SPD block Omega + Lambda with a Cholesky decomposition and
/// eliminates the border. A failed factorisation is retried once with a
/// diagonal jitter of 1e-10 * trace / N before raising SolverFailure.
DualSolution solve_dual(const WeightedProblem& p);

/// e_k = 1 - (Omega alpha)_k - y_k b.
Vector training_errors(const WeightedProblem& p, const Vector& alpha, double b);

/// score_i = sum_k alpha_k y_k K(x*_i, x_k) + b.
Vector decision_scores(const Vector& alpha, double b, const Vector& y_train,
                       const GramMatrix& k_test_train);

/// Max-norm residual of the bordered system for a candidate (alpha, b).
double bordered_residual(const WeightedProblem& p, const Vector& alpha, double b);

}  // namespace awlssvm

#pragma once

#include <string>

#include <Eigen/Dense>

namespace awlssvm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense kernel evaluations, rows indexed by the first sample set.
using GramMatrix = Eigen::MatrixXd;

enum class KernelFamily { rbf, linear };

/// Kernel family plus its parameter. RBF uses exp(-|x - z|^2 / (2 sigma^2)).
struct KernelSpec {
  KernelFamily family = KernelFamily::rbf;
  double bandwidth = 1.0;

  static KernelSpec rbf(double sigma) { return {KernelFamily::rbf, sigma}; }
  static KernelSpec linear() { return {KernelFamily::linear, 1.0}; }

  /// Throws ArgumentError for a non-finite or non-positive RBF bandwidth.
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

const char* to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& z);

/// Entry (i, j) is K(A.row(i), B.row(j)). Samples are rows.
GramMatrix gram_matrix(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Omega_ij = y_i y_j K_ij.
Matrix labeled_kernel(const GramMatrix& k, const Vector& y);

}  // namespace awlssvm

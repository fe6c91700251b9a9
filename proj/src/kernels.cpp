#include "awlssvm/kernels.hpp"

#include <cmath>
#include <string>

#include "awlssvm/errors.hpp"

namespace awlssvm {

namespace {

// Both routines take contiguous samples of equal length `dim`. The summation
// order is symmetric in (x, z) so K(x, z) == K(z, x) bit for bit.
double squared_distance(const double* x, const double* z, Eigen::Index dim) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double d = x[k] - z[k];
    acc += d * d;
  }
  return acc;
}

double dot(const double* x, const double* z, Eigen::Index dim) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) acc += x[k] * z[k];
  return acc;
}

double eval_contiguous(const KernelSpec& spec, const double* x, const double* z,
                       Eigen::Index dim) {
  if (spec.family == KernelFamily::linear) return dot(x, z, dim);
  const double denom = 2.0 * spec.bandwidth * spec.bandwidth;
  return std::exp(-squared_distance(x, z, dim) / denom);
}

}  // namespace

void KernelSpec::validate() const {
  if (family == KernelFamily::rbf && !(std::isfinite(bandwidth) && bandwidth > 0.0)) {
    throw ArgumentError("rbf bandwidth must be finite and > 0, got " +
                        std::to_string(bandwidth));
  }
}

const char* to_string(KernelFamily family) {
  return family == KernelFamily::rbf ? "rbf" : "linear";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "rbf") return KernelFamily::rbf;
  if (name == "linear") return KernelFamily::linear;
  throw ArgumentError("unknown kernel family '" + name + "'");
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& z) {
  spec.validate();
  if (x.size() != z.size()) {
    throw InputShapeError("kernel_eval: dimension mismatch " + std::to_string(x.size()) +
                          " vs " + std::to_string(z.size()));
  }
  if (!x.allFinite() || !z.allFinite()) {
    throw NumericInputError("kernel_eval: non-finite input");
  }
  const Vector xc = x;
  const Vector zc = z;
  return eval_contiguous(spec, xc.data(), zc.data(), xc.size());
}

GramMatrix gram_matrix(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  spec.validate();
  if (a.cols() != b.cols()) {
    throw InputShapeError("gram_matrix: feature dimension mismatch " +
                          std::to_string(a.cols()) + " vs " + std::to_string(b.cols()));
  }
  if (!a.allFinite() || !b.allFinite()) {
    throw NumericInputError("gram_matrix: non-finite input");
  }
  const Eigen::Index dim = a.cols();
  // Column-major storage makes a sample a strided row; transpose once so each
  // sample is contiguous.
  const Matrix at = a.transpose();
  const bool same = &a == &b;
  const Matrix bt_storage = same ? Matrix() : Matrix(b.transpose());
  const Matrix& bt = same ? at : bt_storage;

  GramMatrix g(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    const double* zj = bt.col(j).data();
    const Eigen::Index i_start = same ? j : 0;
    for (Eigen::Index i = i_start; i < a.rows(); ++i) {
      g(i, j) = eval_contiguous(spec, at.col(i).data(), zj, dim);
    }
  }
  if (same) {
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      for (Eigen::Index i = 0; i < j; ++i) g(i, j) = g(j, i);
  }
  return g;
}

Matrix labeled_kernel(const GramMatrix& k, const Vector& y) {
  if (k.rows() != k.cols()) {
    throw InputShapeError("labeled_kernel: kernel matrix must be square");
  }
  if (k.rows() != y.size()) {
    throw InputShapeError("labeled_kernel: label length " + std::to_string(y.size()) +
                          " does not match kernel size " + std::to_string(k.rows()));
  }
  return (y * y.transpose()).cwiseProduct(k);
}

}  // namespace awlssvm

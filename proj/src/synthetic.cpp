#include "awlssvm/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "awlssvm/errors.hpp"
#include "awlssvm/rng.hpp"

namespace awlssvm::synthetic {

namespace {

// Box-Muller on the portable uniform draw.
double standard_normal(Rng& rng) {
  double u1 = uniform_unit(rng);
  while (u1 <= 0.0) u1 = uniform_unit(rng);
  const double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

MultiViewDataset complementary_views(int per_class, std::uint64_t seed, bool separable,
                                     double separation) {
  if (per_class < 2) throw ArgumentError("complementary_views: per_class must be >= 2");
  const double d = separation;
  // means[view][class]
  const double comp[2][3][2] = {{{-d, 0.0}, {d, 0.0}, {d, 0.0}},
                                {{-d, 0.0}, {-d, 0.0}, {d, 0.0}}};
  const double sep[2][3][2] = {{{-d, 0.0}, {d, 0.0}, {0.0, d}},
                               {{0.0, -d}, {-d, d}, {d, d}}};
  const auto& means = separable ? sep : comp;

  const int n = 3 * per_class;
  MultiViewDataset ds;
  ds.name = separable ? "separable-synthetic" : "complementary-synthetic";
  ds.num_classes = 3;
  ds.view_names = {"view0", "view1"};
  ds.views.assign(2, Matrix(n, 2));
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const int c = i % 3;
    ds.labels.push_back(c);
    for (int v = 0; v < 2; ++v)
      for (int j = 0; j < 2; ++j) ds.views[v](i, j) = means[v][c][j] + standard_normal(rng);
  }
  return ds;
}

MultiViewDataset shaped(std::size_t num_samples, std::vector<int> dims, int num_classes,
                        std::uint64_t seed, double noise) {
  if (num_classes < 2 || num_samples < static_cast<std::size_t>(num_classes) || dims.empty()) {
    throw ArgumentError("shaped: need >= 2 classes, >= 1 sample per class, >= 1 view");
  }
  Rng rng(seed);
  MultiViewDataset ds;
  ds.name = "shaped-synthetic";
  ds.num_classes = num_classes;
  for (std::size_t i = 0; i < num_samples; ++i) ds.labels.push_back(static_cast<int>(i % num_classes));
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (dims[v] < 1) throw ArgumentError("shaped: view width must be >= 1");
    Matrix centers(num_classes, dims[v]);
    for (int c = 0; c < num_classes; ++c)
      for (int j = 0; j < dims[v]; ++j) centers(c, j) = 2.0 * standard_normal(rng);
    Matrix x(static_cast<Eigen::Index>(num_samples), dims[v]);
    for (std::size_t i = 0; i < num_samples; ++i)
      for (int j = 0; j < dims[v]; ++j)
        x(static_cast<Eigen::Index>(i), j) = centers(ds.labels[i], j) + noise * standard_normal(rng);
    ds.views.push_back(std::move(x));
    ds.view_names.push_back("view" + std::to_string(v));
  }
  return ds;
}

}  // namespace awlssvm::synthetic

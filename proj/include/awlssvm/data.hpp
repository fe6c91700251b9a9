#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "awlssvm/kernels.hpp"

namespace awlssvm {

/// N samples seen through V feature matrices (rows = samples) with shared labels.
struct MultiViewDataset {
  std::string name;
  std::vector<Matrix> views;
  std::vector<std::string> view_names;
  std::vector<int> labels;
  int num_classes = 0;

  std::size_t num_samples() const { return labels.size(); }
  std::size_t num_views() const { return views.size(); }

  /// Row counts, label range, finiteness, and that every class occurs.
  void validate() const;

  /// Shape and range checks only; classes may be absent (used for folds).
  void validate_shape() const;

  /// Rows `rows` (in the given order) of every view and of the labels.
  MultiViewDataset subset(std::span<const std::size_t> rows) const;

  std::vector<std::size_t> class_counts() const;
};

/// Reads a dataset directory: manifest.json, one CSV per view, labels file.
///
/// manifest.json: {"name", "num_samples", "num_classes", "labels_file",
/// "views": [{"name", "file", "dim"}]}. CSV files have no header. When
/// `require_labels` is false a missing "labels_file" entry is allowed and the
/// returned labels are empty.
MultiViewDataset load_dataset(const std::filesystem::path& dir, bool require_labels = true);

/// Writes the layout read by load_dataset. Values use shortest round-trip form.
void save_dataset(const MultiViewDataset& ds, const std::filesystem::path& dir);

/// Per-class test counts are round(fraction * count) clamped to [1, count - 1].
std::pair<MultiViewDataset, MultiViewDataset> stratified_split(const MultiViewDataset& ds,
                                                               double test_fraction,
                                                               std::uint64_t seed);

/// Row indices (train, test) behind stratified_split.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split_indices(
    std::span<const int> labels, int num_classes, double test_fraction, std::uint64_t seed);

/// Test-row indices for each of k stratified folds.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels,
                                                       int num_classes, int k,
                                                       std::uint64_t seed);

/// Proportional per-class allocation with largest-remainder rounding.
MultiViewDataset stratified_downsample(const MultiViewDataset& ds, std::size_t target_n,
                                       std::uint64_t seed);

/// Keeps the k most populous classes (ties to the lower id) and relabels them
/// 0..k-1 in that order.
MultiViewDataset retain_top_classes(const MultiViewDataset& ds, int k);

/// Horizontal concatenation of all views, in view order.
Matrix concatenate_views(std::span<const Matrix> views);

struct StandardizationStats {
  Vector mean;
  Vector scale;  ///< population standard deviation; 0 marks a constant feature
};

StandardizationStats standardize_fit(const Matrix& train);
/// Constant features map to 0.
Matrix standardize_apply(const StandardizationStats& stats, const Matrix& x);
Matrix standardize_invert(const StandardizationStats& stats, const Matrix& z);

}  // namespace awlssvm

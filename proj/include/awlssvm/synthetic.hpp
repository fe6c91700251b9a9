#pragma once

#include <cstdint>
#include <vector>

#include "awlssvm/data.hpp"

namespace awlssvm::synthetic {

/// Three classes seen through two 2-D Gaussian views.
///
/// In the complementary variant view 0 puts classes 1 and 2 on the same blob
/// (it only tells class 0 apart) while view 1 merges classes 0 and 1 (it only
/// tells class 2 apart), so neither view alone separates all three. The
/// separable variant gives every class its own blob in both views.
MultiViewDataset complementary_views(int per_class, std::uint64_t seed, bool separable = false,
                                     double separation = 3.0);

/// Balanced C-class data with V views of the given widths; class means are
/// random per view and `noise` is the per-feature standard deviation.
MultiViewDataset shaped(std::size_t num_samples, std::vector<int> dims, int num_classes,
                        std::uint64_t seed, double noise = 1.0);

}  // namespace awlssvm::synthetic

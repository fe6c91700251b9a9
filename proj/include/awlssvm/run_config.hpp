#pragma once

#include <filesystem>
#include <string>

#include "awlssvm/adaptive.hpp"
#include "awlssvm/eval.hpp"

namespace awlssvm {

/// The JSON configuration document accepted by the command-line tool.
///
///   {
///     "gamma": 1.0, "rho": 1.0, "beta": 0.7, "iterations": 2,
///     "kernel": "rbf", "bandwidth": 1.0, "standardize": true,
///     "test_fraction": 0.2, "seeds": [0, 1, 2], "folds": 3,
///     "search": {"gamma": [0.01, 1000], "rho": [0.01, 1000],
///                "bandwidth": [0.25, 4], "budget": 16, "seed": 0}
///   }
///
/// Every key is optional; unknown keys are rejected.
struct RunConfig {
  TrainConfig train{};
  SearchSpace search{};
  SplitPlan split{};
  int folds = 3;

  void validate() const;
};

/// Parses and validates. Throws ArgumentError naming the offending key.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace awlssvm

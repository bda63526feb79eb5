#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrnn/datasets.hpp"
#include "qrnn/training.hpp"

namespace qrnn {

enum class Task { kCosine, kTriangle, kSpin };

std::string task_name(Task task);
Task task_from_name(const std::string& name);  // throws ConfigError

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Task task = Task::kCosine;
  int n_a = 3;
  int n_b = 3;
  int depth = 3;
  double tau = 0.2;  // task default: 0.2 cosine/triangle, 0.18 spin
  int n_seeds = 10;
  std::uint64_t master_seed = 20240901;
  int test_window = 25;
  std::string output_dir = "out";
  TrainConfig train;
  std::vector<double> tau_grid = {0, 0.05, 0.1, 0.2, 0.5, 1, 2, 5, 10};
  int lindblad_substeps = kDefaultLindbladSubsteps;

  void validate() const;  // throws ConfigError
};

/// Per-task defaults (tau and series lengths follow the task).
ExperimentConfig default_config(Task task);

/// Flat `key = value` lines, `#` comments, blank lines ignored. Unknown
/// keys are errors. `task` is applied first so its defaults can be
/// overridden by later keys regardless of file order.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace qrnn

#pragma once

#include <string>
#include <vector>

#include "qrnn/config.hpp"
#include "qrnn/model.hpp"
#include "qrnn/training.hpp"

namespace qrnn {

/// Generates the configured target series (cosine/triangle: 200 points,
/// train 100; spin: 500 points, train 200).
TimeSeries generate_task_series(const ExperimentConfig& config);

/// Architecture with the Hamiltonian coefficients for one seed index.
QrnnArchitecture make_architecture(const ExperimentConfig& config,
                                   int seed_index);

/// Closed-loop predictions aligned to indices train_len .. len-1.
std::vector<double> closed_loop_predictions(const QrnnArchitecture& arch,
                                            const QrnnParameters& params,
                                            const TimeSeries& series);

/// MSE of the first `window` closed-loop predictions against the truth.
double test_window_mse(const QrnnArchitecture& arch,
                       const QrnnParameters& params, const TimeSeries& series,
                       int window);

/// Teacher-forced outputs on the training region followed by closed-loop
/// predictions; one value per series index.
std::vector<double> full_output_series(const QrnnArchitecture& arch,
                                       const QrnnParameters& params,
                                       const TimeSeries& series);

struct SeedOutcome {
  int seed_index = 0;
  bool ok = false;
  std::string error;
  double test_mse = 0.0;
  int iterations = 0;
  bool converged = false;
  QrnnParameters params;
};

/// Trains one Hamiltonian draw; failures are captured, not thrown.
SeedOutcome train_seed(const ExperimentConfig& config,
                       const TimeSeries& series, int seed_index);

struct DemoResult {
  std::vector<SeedOutcome> seeds;
  int best_seed = -1;  // -1 if every seed failed
  double best_mse = 0.0;
};

/// Trains all seeds, writes result.csv / summary.csv / model.txt /
/// demo.svg under output_dir, returns the per-seed outcomes.
DemoResult run_demo(const ExperimentConfig& config);

struct SweepRow {
  double tau = 0.0;
  int seed_index = 0;
  double mse = 0.0;
  std::string status;  // "ok" or a failure reason
};

/// Coefficients are drawn once per seed and reused across the tau grid.
/// Writes sweep.csv and sweep.svg under output_dir.
std::vector<SweepRow> run_tau_sweep(const ExperimentConfig& config);

double median(std::vector<double> values);  // rejects empty input

struct GradCheckReport {
  double forward_vs_shift = 0.0;
  double forward_vs_reverse = 0.0;
  double forward_vs_fd = 0.0;
  double shift_vs_fd = 0.0;
  long long shift_evals_per_angle_d1 = 0;
  bool passed = false;
};

/// Cross-validates the gradient evaluators on a small fixed instance and
/// writes gradcheck.txt under output_dir.
GradCheckReport run_grad_check(const ExperimentConfig& config);

/// Architecture + parameters as `name = value` lines (lists comma-joined).
void save_model(const QrnnArchitecture& arch, const QrnnParameters& params,
                const std::string& path);

struct ModelFile {
  QrnnArchitecture arch;
  QrnnParameters params;
};

ModelFile load_model(const std::string& path);

}  // namespace qrnn

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qrnn/gradients.hpp"
#include "qrnn/model.hpp"

namespace qrnn {

struct TrainConfig {
  int max_iterations = 500;
  double grad_norm_tol = 1e-6;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  int max_line_search_steps = 40;

  void validate() const;
};

struct BfgsResult {
  std::vector<double> x;
  std::vector<double> cost_trace;  // accepted iterates, non-increasing
  int iterations = 0;
  bool converged = false;
  double final_grad_norm = 0.0;
};

struct TrainResult {
  QrnnParameters final_params;
  std::vector<double> cost_trace;
  int iterations = 0;
  bool converged = false;
  double final_grad_norm = 0.0;
};

/// Raised when a cost or gradient oracle returns a non-finite value.
struct NonFiniteObjective : std::runtime_error {
  std::vector<double> point;
  explicit NonFiniteObjective(std::vector<double> x);
};

/// ½ Σ (output - target)².
double cost_half_sse(const std::vector<double>& outputs,
                     const std::vector<double>& targets);

/// Mean squared residual; rejects empty input.
double mse(const std::vector<double>& outputs,
           const std::vector<double>& targets);

using CostOracle = std::function<double(const std::vector<double>&)>;
using GradOracle = std::function<std::vector<double>(const std::vector<double>&)>;

/// BFGS with inverse-Hessian update and strong-Wolfe line search.
BfgsResult bfgs_minimize(const CostOracle& cost, const GradOracle& grad,
                         const std::vector<double>& x0,
                         const TrainConfig& config);

/// Trains θ = 0, c_out = 1 against the teacher-forced half-SSE cost.
/// A custom gradient oracle (e.g. finite differences) may be injected; the
/// default is the exact reverse-accumulation evaluator.
TrainResult train_qrnn(const QrnnArchitecture& arch, const TimeSeries& series,
                       const TrainConfig& config,
                       const GradOracle* custom_grad = nullptr);

}  // namespace qrnn

#pragma once

#include <vector>

#include "qrnn/model.hpp"

namespace qrnn {

/// Same flat layout as QrnnParameters: angles first, readout scale last.
using GradientVector = std::vector<double>;

/// Sensitivity carried alongside rho_A: sigma[i] = d(rho_A)/d(theta_i),
/// trace-zero Hermitian on the group-A qubits.
struct SensitivityState {
  DensityMatrix rho_a;
  std::vector<ComplexMatrix> sigma;
};

/// Diagonal of the mean group-B Z observable on the full register.
Eigen::VectorXd mean_z_diagonal(int n_a, int n_b);

/// dU/d(theta_i) by generator insertion at the gate site, one matrix per
/// rotation angle in flat order.
std::vector<ComplexMatrix> evolution_unitary_derivatives(
    const QrnnArchitecture& arch, const QrnnParameters& params);

/// ½ Σ_t (c·m_t - target_t)² over the first targets.size() steps.
double qrnn_sequence_cost(const QrnnArchitecture& arch,
                          const QrnnParameters& params,
                          const std::vector<double>& inputs,
                          const std::vector<double>& targets);

/// Exact gradient by forward propagation of the sigma recursion.
GradientVector grad_forward_sensitivity(const QrnnArchitecture& arch,
                                        const QrnnParameters& params,
                                        const std::vector<double>& inputs,
                                        const std::vector<double>& targets);

struct ParameterShiftResult {
  GradientVector gradient;
  long long evaluation_count = 0;  // full shifted sequence evaluations
};

/// Unrolled parameter-shift estimator: ±π/2 shifts applied to one
/// time-step occurrence of each angle at a time.
ParameterShiftResult grad_parameter_shift(const QrnnArchitecture& arch,
                                          const QrnnParameters& params,
                                          const std::vector<double>& inputs,
                                          const std::vector<double>& targets);

/// Central differences on the full cost, step h per flat entry.
GradientVector grad_finite_difference(const QrnnArchitecture& arch,
                                      const QrnnParameters& params,
                                      const std::vector<double>& inputs,
                                      const std::vector<double>& targets,
                                      double h);

/// Exact cost gradient evaluated by reverse-order accumulation of the same
/// sensitivity sums; algebraically identical to grad_forward_sensitivity
/// but O(T) slim-matrix work per parameter vector instead of O(T·n_params)
/// full conjugations. Training fast path.
class ReverseAccumulator {
 public:
  explicit ReverseAccumulator(QrnnArchitecture arch);

  double cost(const QrnnParameters& params, const std::vector<double>& inputs,
              const std::vector<double>& targets) const;

  GradientVector gradient(const QrnnParameters& params,
                          const std::vector<double>& inputs,
                          const std::vector<double>& targets,
                          double* cost_out = nullptr) const;

 private:
  ComplexMatrix build_unitary(const QrnnParameters& params,
                              std::vector<ComplexMatrix>* layers) const;

  QrnnArchitecture arch_;
  ComplexMatrix expm_;    // exp(-i H_int tau), shared across calls
  Eigen::VectorXd zfull_;
};

/// Convenience wrapper over ReverseAccumulator.
GradientVector grad_reverse_accumulation(const QrnnArchitecture& arch,
                                         const QrnnParameters& params,
                                         const std::vector<double>& inputs,
                                         const std::vector<double>& targets);

}  // namespace qrnn

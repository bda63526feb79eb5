#pragma once

#include <vector>

#include "qrnn/density.hpp"
#include "qrnn/linalg.hpp"

namespace qrnn {

/// Static circuit structure: qubit split, layer count, evolution time and
/// the fixed interaction-Hamiltonian coefficients.
struct QrnnArchitecture {
  int n_a = 3;
  int n_b = 3;
  int depth = 3;
  double tau = 0.2;
  std::vector<double> a;  // transverse-field coefficients, length n
  std::vector<double> j;  // couplings J_{jk}, j > k, packed j-major

  int n_qubits() const { return n_a + n_b; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits(); }
  Eigen::Index dim_a() const { return Eigen::Index(1) << n_a; }
  Eigen::Index dim_b() const { return Eigen::Index(1) << n_b; }

  static int coupling_index(int j, int k);  // requires j > k
  double coupling(int j, int k) const { return this->j[coupling_index(j, k)]; }

  void validate() const;
};

/// Trainable parameters: three Euler angles per qubit per layer plus the
/// readout scale. Flat layout: [layer-major, qubit, (alpha, beta, gamma)],
/// c_out last; total 3*n*depth + 1 entries.
struct QrnnParameters {
  int n_qubits = 0;
  int depth = 0;
  std::vector<double> angles;  // 3 * n_qubits * depth
  double c_out = 1.0;

  static QrnnParameters zeros(int n_qubits, int depth);

  int n_angles() const { return 3 * n_qubits * depth; }
  int flat_size() const { return n_angles() + 1; }
  // slot: 0 = alpha, 1 = beta, 2 = gamma
  int angle_index(int layer, int qubit, int slot) const {
    return (layer * n_qubits + qubit) * 3 + slot;
  }
  double angle(int layer, int qubit, int slot) const {
    return angles[angle_index(layer, qubit, slot)];
  }

  std::vector<double> to_flat() const;
  static QrnnParameters from_flat(const std::vector<double>& flat, int n_qubits,
                                  int depth);
};

/// Ordered scalar series in [-1, 1] with its train/test split.
struct TimeSeries {
  std::vector<double> values;
  int train_len = 0;

  void validate() const;
  std::vector<double> train_slice() const;
};

/// Real amplitudes of R_y(arccos x)^{⊗n_b} |0...0>.
Eigen::VectorXd input_amplitudes(double x, int n_b);

/// ⊗_{q} R_y(arccos x) acting on the n_b group-B qubits.
ComplexMatrix build_input_unitary(double x, int n_b);

/// Group-B state after encoding: pure |ψ(x)><ψ(x)|.
DensityMatrix input_state_b(double x, int n_b);

/// H_int = Σ_j a_j X_j + Σ_{j>k} J_{jk} Z_j Z_k.
HermitianObservable build_interaction_hamiltonian(const QrnnArchitecture& arch);

/// ⊗_q R_x(alpha) R_z(beta) R_x(gamma) for one layer.
ComplexMatrix build_layer_rotation(const QrnnArchitecture& arch,
                                   const QrnnParameters& params, int layer);

/// U(θ) = Π_{d=D..1} [exp(-i H_int τ) R_d]; layer 1 acts first in time.
ComplexMatrix build_evolution_unitary(const QrnnArchitecture& arch,
                                      const QrnnParameters& params);

struct QrnnState {
  DensityMatrix rho_a;
  ComplexMatrix evolution;  // cached U(θ), 2^n x 2^n

  static QrnnState initial(const QrnnArchitecture& arch,
                           const QrnnParameters& params);
};

struct StepResult {
  QrnnState state;
  std::vector<double> z_expectations;  // <Z_q> for each group-B qubit
  double y_bar = 0.0;
};

/// One encode -> evolve -> measure -> reset step.
StepResult qrnn_step(const QrnnState& state, double x,
                     const QrnnArchitecture& arch,
                     const QrnnParameters& params);

/// Precomputed machinery for running many steps with the same parameters.
/// Exploits the purity of the encoded B state: each step reduces to the
/// slim injection matrix W(x) = U (I_A ⊗ |ψ(x)>), 2^n x 2^{n_A}.
class QrnnSimulator {
 public:
  QrnnSimulator(const QrnnArchitecture& arch, const QrnnParameters& params);

  const QrnnArchitecture& arch() const { return arch_; }
  const QrnnParameters& params() const { return params_; }
  const ComplexMatrix& evolution() const { return evolution_; }
  const ComplexMatrix& hamiltonian_exponential() const { return expm_; }

  ComplexMatrix injection(double x) const;  // W(x)

  /// rho_a' = Tr_B[W rho_a W†], m = mean_q <Z_q>. Returns m.
  double step_in_place(ComplexMatrix& rho_a, double x) const;

  /// Mean-Z readout before scaling: m_t sequence under teacher forcing.
  std::vector<double> mean_z_teacher_forced(
      const std::vector<double>& inputs) const;

 private:
  QrnnArchitecture arch_;
  QrnnParameters params_;
  ComplexMatrix expm_;       // exp(-i H_int tau)
  ComplexMatrix evolution_;  // U(θ)
  Eigen::VectorXd zbar_;     // diagonal of mean group-B Z observable
};

/// Teacher-forced run from |0><0|^{⊗n_A}; one output per input.
std::vector<double> run_teacher_forced(const QrnnArchitecture& arch,
                                       const QrnnParameters& params,
                                       const std::vector<double>& inputs);

/// Teacher-forced over the seed, then closed-loop for `horizon` steps with
/// clamped re-injection. Returns horizon + 1 values aligned to test indices.
std::vector<double> run_closed_loop(const QrnnArchitecture& arch,
                                    const QrnnParameters& params,
                                    const std::vector<double>& seed_inputs,
                                    int horizon);

}  // namespace qrnn

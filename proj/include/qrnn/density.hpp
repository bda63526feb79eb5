#pragma once

#include "qrnn/linalg.hpp"

namespace qrnn {

/// Trace-one positive-semidefinite Hermitian matrix on n qubits.
/// Invariants are asserted at construction in debug builds; validate()
/// performs the same checks on demand.
struct DensityMatrix {
  int n_qubits;
  ComplexMatrix matrix;

  DensityMatrix(int n, ComplexMatrix m);

  Eigen::Index dim() const { return matrix.rows(); }

  /// Throws std::runtime_error on a violated invariant.
  void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                double psd_slack = 1e-9) const;

  /// |0...0><0...0| on n qubits.
  static DensityMatrix ground_state(int n);

  /// I / 2^n.
  static DensityMatrix maximally_mixed(int n);
};

/// U rho U†. Rejects dimension mismatch and non-unitary u.
DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u);

/// Trace out the trailing n_drop qubits (least significant tensor factors).
DensityMatrix partial_trace_trailing(const DensityMatrix& rho, int n_keep,
                                     int n_drop);

/// Re Tr[rho O]; the imaginary part must be < 1e-10 in magnitude.
double expectation(const DensityMatrix& rho, const HermitianObservable& obs);

}  // namespace qrnn

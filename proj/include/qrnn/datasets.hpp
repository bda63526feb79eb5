#pragma once

#include <vector>

#include "qrnn/density.hpp"
#include "qrnn/model.hpp"

namespace qrnn {

/// x_t = cos(π t') / 2 with t' = 8t/199.
TimeSeries gen_cosine(int total_len = 200, int train_len = 100);

/// Piecewise-linear wave on t' = 8t/199, period 2, amplitude 1/2.
TimeSeries gen_triangle(int total_len = 200, int train_len = 100);

double triangle_value(double t_prime);

/// Open 3-spin system: Hamiltonian plus collapse operators.
struct LindbladSystem {
  HermitianObservable hamiltonian;
  std::vector<ComplexMatrix> collapse_ops;
  int n_qubits = 0;
};

/// -i[H, σ] + Σ_k (C_k σ C_k† - ½{C_k†C_k, σ}); trace-zero, Hermitian.
ComplexMatrix lindblad_rhs(const ComplexMatrix& sigma,
                           const LindbladSystem& system);

inline constexpr int kDefaultLindbladSubsteps = 400;

/// Classical RK4 with `substeps` uniform internal steps per sample
/// interval; samples are re-symmetrized and trace-renormalized.
std::vector<DensityMatrix> integrate_lindblad_rk4(
    const LindbladSystem& system, const DensityMatrix& sigma0,
    const std::vector<double>& sample_times, int substeps);

/// The 3-spin chain used as the spin-dynamics target: h = 2π fields,
/// 0.1π couplings, collapse strength √0.002 on X_i + Y_i.
LindbladSystem make_three_spin_system(double collapse_strength);

/// <X_1(t')> sampled at t' = 100t/499 from |000>.
TimeSeries gen_spin_series(int total_len = 500, int train_len = 200,
                           int substeps = kDefaultLindbladSubsteps);

}  // namespace qrnn

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qrnn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

enum class Axis { X, Y, Z };

/// Kronecker product, a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity_matrix(Eigen::Index dim);
ComplexMatrix pauli(Axis axis);

bool all_finite(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Hermitian operator with the Hermiticity contract checked at construction.
struct HermitianObservable {
  ComplexMatrix matrix;

  explicit HermitianObservable(ComplexMatrix m, double tol = 1e-12);
};

/// exp(-i * angle * P / 2) for P in {X, Y, Z}.
ComplexMatrix rotation_gate(Axis axis, double angle);

/// I^{⊗q} ⊗ P ⊗ I^{⊗(n-q-1)}; qubit 0 is the leading (most significant) factor.
HermitianObservable pauli_embed(Axis axis, int qubit, int n_qubits);

struct EigResult {
  Eigen::VectorXd eigenvalues;  // ascending
  ComplexMatrix eigenvectors;   // columns, unitary
};

EigResult herm_eigendecompose(const HermitianObservable& h);

/// exp(-i h t) via eigendecomposition.
ComplexMatrix unitary_from_hamiltonian(const HermitianObservable& h, double t);

}  // namespace qrnn

#include "qrnn/linalg.hpp"

#include <cmath>

namespace qrnn {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix identity_matrix(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli(Axis axis) {
  ComplexMatrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix p = m.adjoint() * m;
  return (p - identity_matrix(m.rows())).cwiseAbs().maxCoeff() <= tol;
}

HermitianObservable::HermitianObservable(ComplexMatrix m, double tol)
    : matrix(std::move(m)) {
  if (!is_hermitian(matrix, tol))
    throw std::invalid_argument("HermitianObservable: matrix is not Hermitian");
}

ComplexMatrix rotation_gate(Axis axis, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  ComplexMatrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
      break;
    case Axis::Y:
      m << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
      break;
    case Axis::Z:
      m << std::exp(Complex(0, -angle / 2.0)), Complex(0, 0), Complex(0, 0),
          std::exp(Complex(0, angle / 2.0));
      break;
  }
  return m;
}

HermitianObservable pauli_embed(Axis axis, int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::out_of_range("pauli_embed: qubit index out of range");
  ComplexMatrix m = identity_matrix(Eigen::Index(1) << qubit);
  m = kron(m, pauli(axis));
  m = kron(m, identity_matrix(Eigen::Index(1) << (n_qubits - qubit - 1)));
  return HermitianObservable(std::move(m));
}

EigResult herm_eigendecompose(const HermitianObservable& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("herm_eigendecompose: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_from_hamiltonian(const HermitianObservable& h, double t) {
  if (!std::isfinite(t))
    throw std::invalid_argument("unitary_from_hamiltonian: t must be finite");
  if (t == 0.0) return identity_matrix(h.matrix.rows());  // exp(0) exactly
  EigResult eig = herm_eigendecompose(h);
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0, -eig.eigenvalues(k) * t));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace qrnn

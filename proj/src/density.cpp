#include "qrnn/density.hpp"

#include <cassert>
#include <cmath>

namespace qrnn {

DensityMatrix::DensityMatrix(int n, ComplexMatrix m)
    : n_qubits(n), matrix(std::move(m)) {
  const Eigen::Index d = Eigen::Index(1) << n_qubits;
  if (n_qubits < 1 || matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("DensityMatrix: dimension mismatch");
#ifndef NDEBUG
  validate();
#endif
}

void DensityMatrix::validate(double herm_tol, double trace_tol,
                             double psd_slack) const {
  if (!all_finite(matrix))
    throw std::runtime_error("DensityMatrix: non-finite entries");
  if (!is_hermitian(matrix, herm_tol))
    throw std::runtime_error("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace() - Complex(1, 0)) > trace_tol)
    throw std::runtime_error("DensityMatrix: trace is not one");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix,
                                                      Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -psd_slack)
    throw std::runtime_error("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::ground_state(int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(0, 0) = 1.0;
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const Eigen::Index d = Eigen::Index(1) << n;
  return DensityMatrix(n, ComplexMatrix::Identity(d, d) / double(d));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  if (!is_unitary(u, 1e-8))
    throw std::invalid_argument("apply_unitary: matrix is not unitary");
  return DensityMatrix(rho.n_qubits, u * rho.matrix * u.adjoint());
}

namespace {

ComplexMatrix trace_out_trailing(const ComplexMatrix& m, Eigen::Index d_keep,
                                 Eigen::Index d_drop) {
  ComplexMatrix out = ComplexMatrix::Zero(d_keep, d_keep);
  for (Eigen::Index i = 0; i < d_keep; ++i)
    for (Eigen::Index j = 0; j < d_keep; ++j) {
      Complex acc(0, 0);
      for (Eigen::Index k = 0; k < d_drop; ++k)
        acc += m(i * d_drop + k, j * d_drop + k);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

DensityMatrix partial_trace_trailing(const DensityMatrix& rho, int n_keep,
                                     int n_drop) {
  if (n_keep + n_drop != rho.n_qubits)
    throw std::invalid_argument("partial_trace_trailing: qubit count mismatch");
  const Eigen::Index d_keep = Eigen::Index(1) << n_keep;
  const Eigen::Index d_drop = Eigen::Index(1) << n_drop;
  return DensityMatrix(n_keep,
                       trace_out_trailing(rho.matrix, d_keep, d_drop));
}

double expectation(const DensityMatrix& rho, const HermitianObservable& obs) {
  if (obs.matrix.rows() != rho.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  const Complex tr = (rho.matrix * obs.matrix).trace();
  assert(std::abs(tr.imag()) < 1e-10);
  return tr.real();
}

}  // namespace qrnn

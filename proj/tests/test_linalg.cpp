#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qrnn/linalg.hpp"

using namespace qrnn;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("kron dimensions and values") {
  const ComplexMatrix a = mat2(1, 2, 3, 4);
  const ComplexMatrix b = mat2(0, 1, 1, 0);
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 1) == Complex(1, 0));   // a00 * b01
  CHECK(k(0, 0) == Complex(0, 0));
  CHECK(k(2, 1) == Complex(3, 0));   // a10 * b01
  CHECK(k(3, 2) == Complex(4, 0));
}

TEST_CASE("kron with identity reproduces block structure") {
  const ComplexMatrix a = mat2(Complex(1, 1), 2, 3, Complex(0, -2));
  const ComplexMatrix left = kron(identity_matrix(2), a);
  CHECK(max_abs(left.block(0, 0, 2, 2) - a) == doctest::Approx(0));
  CHECK(max_abs(left.block(0, 2, 2, 2)) == doctest::Approx(0));
  CHECK(max_abs(left.block(2, 2, 2, 2) - a) == doctest::Approx(0));
}

TEST_CASE("pauli matrices square to identity and anticommute") {
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const ComplexMatrix p = pauli(axis);
    CHECK(max_abs(p * p - identity_matrix(2)) < 1e-15);
    CHECK(std::abs(p.trace()) < 1e-15);
    CHECK(is_hermitian(p, 1e-15));
  }
  const ComplexMatrix x = pauli(Axis::X), y = pauli(Axis::Y),
                      z = pauli(Axis::Z);
  CHECK(max_abs(x * y + y * x) < 1e-15);
  // XY = iZ
  CHECK(max_abs(x * y - Complex(0, 1) * z) < 1e-15);
}

TEST_CASE("rotation gates match closed forms") {
  const double t = 0.7318;
  // R_x(t) = cos(t/2) I - i sin(t/2) X
  const ComplexMatrix rx = rotation_gate(Axis::X, t);
  const ComplexMatrix want_x = std::cos(t / 2) * identity_matrix(2) -
                               Complex(0, 1) * std::sin(t / 2) * pauli(Axis::X);
  CHECK(max_abs(rx - want_x) < 1e-15);
  const ComplexMatrix rz = rotation_gate(Axis::Z, t);
  CHECK(std::abs(rz(0, 0) - std::exp(Complex(0, -t / 2))) < 1e-15);
  CHECK(std::abs(rz(1, 1) - std::exp(Complex(0, t / 2))) < 1e-15);
  CHECK(std::abs(rz(0, 1)) == 0);
}

TEST_CASE("rotation gate properties") {
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const ComplexMatrix r = rotation_gate(axis, 1.234);
    CHECK(is_unitary(r, 1e-14));
    // R(0) = I, R(2pi) = -I (spin-half periodicity)
    CHECK(max_abs(rotation_gate(axis, 0) - identity_matrix(2)) < 1e-15);
    CHECK(max_abs(rotation_gate(axis, 2 * kPi) + identity_matrix(2)) < 1e-14);
    // composition: R(a) R(b) = R(a + b)
    const ComplexMatrix lhs =
        rotation_gate(axis, 0.3) * rotation_gate(axis, 0.9);
    CHECK(max_abs(lhs - rotation_gate(axis, 1.2)) < 1e-14);
  }
}

TEST_CASE("pauli_embed places operator at the right tensor slot") {
  // qubit 0 is the most significant factor
  const ComplexMatrix z0 = pauli_embed(Axis::Z, 0, 2).matrix;
  const ComplexMatrix want0 = kron(pauli(Axis::Z), identity_matrix(2));
  CHECK(max_abs(z0 - want0) < 1e-15);
  const ComplexMatrix z1 = pauli_embed(Axis::Z, 1, 2).matrix;
  const ComplexMatrix want1 = kron(identity_matrix(2), pauli(Axis::Z));
  CHECK(max_abs(z1 - want1) < 1e-15);
  // diag of Z at qubit 1 of 2: (+1, -1, +1, -1)
  CHECK(z1(0, 0).real() == 1.0);
  CHECK(z1(1, 1).real() == -1.0);
  CHECK(z1(2, 2).real() == 1.0);
  CHECK(z1(3, 3).real() == -1.0);
}

TEST_CASE("HermitianObservable rejects non-Hermitian input") {
  CHECK_THROWS_AS(HermitianObservable(mat2(0, 1, 2, 0)), std::invalid_argument);
  CHECK_NOTHROW(HermitianObservable(mat2(1, Complex(0, 1), Complex(0, -1), 2)));
}

TEST_CASE("is_unitary and is_hermitian checks") {
  CHECK(is_unitary(identity_matrix(4), 1e-15));
  CHECK(!is_unitary(2.0 * identity_matrix(4), 1e-6));
  CHECK(is_hermitian(pauli(Axis::Y), 1e-15));
  CHECK(!is_hermitian(mat2(0, 1, 2, 0), 1e-6));
  ComplexMatrix bad = identity_matrix(2);
  bad(0, 0) = std::nan("");
  CHECK(!all_finite(bad));
  CHECK(all_finite(identity_matrix(2)));
}

TEST_CASE("herm_eigendecompose reconstructs the matrix") {
  ComplexMatrix h(3, 3);
  h << 2, Complex(0, 1), 0.5, Complex(0, -1), -1, Complex(0.25, 0.75), 0.5,
      Complex(0.25, -0.75), 0.7;
  const EigResult eig = herm_eigendecompose(HermitianObservable(h));
  ComplexMatrix recon = ComplexMatrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i)
    recon += eig.eigenvalues[i] * eig.eigenvectors.col(i) *
             eig.eigenvectors.col(i).adjoint();
  CHECK(max_abs(recon - h) < 1e-12);
  CHECK(is_unitary(eig.eigenvectors, 1e-12));
  for (int i = 0; i + 1 < 3; ++i)
    CHECK(eig.eigenvalues[i] <= eig.eigenvalues[i + 1]);
}

TEST_CASE("unitary_from_hamiltonian matches scaled-rotation closed form") {
  // exp(-i (t/2) X) for H = X/2... use H = X: exp(-iXt) = R_x(2t)
  const ComplexMatrix u =
      unitary_from_hamiltonian(HermitianObservable(pauli(Axis::X)), 0.9);
  CHECK(max_abs(u - rotation_gate(Axis::X, 1.8)) < 1e-13);
  CHECK(is_unitary(u, 1e-12));
  // t = 0 gives the identity
  CHECK(max_abs(unitary_from_hamiltonian(HermitianObservable(pauli(Axis::Z)),
                                         0.0) -
                identity_matrix(2)) < 1e-15);
}

TEST_CASE("unitary_from_hamiltonian composes in time") {
  ComplexMatrix m(2, 2);
  m << 0.4, Complex(0.3, -0.2), Complex(0.3, 0.2), -1.1;
  const HermitianObservable h(m);
  const ComplexMatrix u1 = unitary_from_hamiltonian(h, 0.37);
  const ComplexMatrix u2 = unitary_from_hamiltonian(h, 1.21);
  const ComplexMatrix u12 = unitary_from_hamiltonian(h, 1.58);
  CHECK(max_abs(u1 * u2 - u12) < 1e-13);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qrnn/density.hpp"

using namespace qrnn;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

DensityMatrix pure_state(int n, const Eigen::VectorXcd& psi) {
  return DensityMatrix(n, psi * psi.adjoint() / psi.squaredNorm());
}

}  // namespace

TEST_CASE("ground state and maximally mixed satisfy invariants") {
  const DensityMatrix g = DensityMatrix::ground_state(2);
  CHECK(g.dim() == 4);
  CHECK(g.matrix(0, 0) == Complex(1, 0));
  CHECK_NOTHROW(g.validate());
  const DensityMatrix mix = DensityMatrix::maximally_mixed(3);
  CHECK(mix.matrix(0, 0).real() == doctest::Approx(1.0 / 8));
  CHECK_NOTHROW(mix.validate());
}

TEST_CASE("validate rejects broken invariants") {
  // wrong trace
  CHECK_THROWS_AS(
      DensityMatrix(1, 2.0 * DensityMatrix::ground_state(1).matrix).validate(),
      std::runtime_error);
  // non-Hermitian
  ComplexMatrix m(2, 2);
  m << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix(1, m).validate(), std::runtime_error);
  // Hermitian, trace-one, but indefinite
  ComplexMatrix ind(2, 2);
  ind << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(1, ind).validate(), std::runtime_error);
}

TEST_CASE("apply_unitary conjugates and rejects bad input") {
  const DensityMatrix g = DensityMatrix::ground_state(1);
  const ComplexMatrix x = pauli(Axis::X);
  const DensityMatrix flipped = apply_unitary(g, x);
  CHECK(flipped.matrix(1, 1).real() == doctest::Approx(1.0));
  CHECK(flipped.matrix(0, 0).real() == doctest::Approx(0.0));
  CHECK_THROWS_AS(apply_unitary(g, identity_matrix(4)), std::invalid_argument);
  CHECK_THROWS_AS(apply_unitary(g, 1.5 * x), std::invalid_argument);
}

TEST_CASE("partial trace of a product state returns the leading factor") {
  // rho_A on 1 qubit, arbitrary pure; rho_B = |+><+|
  Eigen::VectorXcd a(2);
  a << Complex(0.6, 0.0), Complex(0.0, 0.8);
  const DensityMatrix rho_a = pure_state(1, a);
  Eigen::VectorXcd plus(2);
  plus << 1, 1;
  const DensityMatrix rho_b = pure_state(1, plus);
  const DensityMatrix joint(2, kron(rho_a.matrix, rho_b.matrix));
  const DensityMatrix reduced = partial_trace_trailing(joint, 1, 1);
  CHECK(max_abs(reduced.matrix - rho_a.matrix) < 1e-14);
}

TEST_CASE("partial trace of an entangled state is mixed") {
  // Bell state (|00> + |11>)/sqrt(2)
  Eigen::VectorXcd bell(4);
  bell << 1, 0, 0, 1;
  const DensityMatrix rho = pure_state(2, bell);
  const DensityMatrix reduced = partial_trace_trailing(rho, 1, 1);
  CHECK(max_abs(reduced.matrix - 0.5 * identity_matrix(2)) < 1e-14);
  CHECK_NOTHROW(reduced.validate());
}

TEST_CASE("partial trace preserves trace and hermiticity") {
  // random-ish mixed state built from a convex mix of pure states
  Eigen::VectorXcd v1(8), v2(8);
  for (int i = 0; i < 8; ++i) {
    v1[i] = Complex(std::sin(1.3 * i + 0.2), std::cos(2.1 * i));
    v2[i] = Complex(std::cos(0.7 * i), std::sin(1.9 * i + 1.0));
  }
  const ComplexMatrix mix =
      0.3 * pure_state(3, v1).matrix + 0.7 * pure_state(3, v2).matrix;
  const DensityMatrix rho(3, mix);
  const DensityMatrix reduced = partial_trace_trailing(rho, 2, 1);
  CHECK(reduced.dim() == 4);
  CHECK(std::abs(reduced.matrix.trace() - Complex(1, 0)) < 1e-13);
  CHECK_NOTHROW(reduced.validate(1e-10, 1e-10, 1e-9));
}

TEST_CASE("expectation values of Pauli observables") {
  const DensityMatrix g = DensityMatrix::ground_state(1);
  CHECK(expectation(g, pauli_embed(Axis::Z, 0, 1)) == doctest::Approx(1.0));
  CHECK(expectation(g, pauli_embed(Axis::X, 0, 1)) == doctest::Approx(0.0));
  Eigen::VectorXcd plus(2);
  plus << 1, 1;
  const DensityMatrix p = pure_state(1, plus);
  CHECK(expectation(p, pauli_embed(Axis::X, 0, 1)) == doctest::Approx(1.0));
  CHECK(expectation(p, pauli_embed(Axis::Z, 0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("expectation is linear in the state") {
  const HermitianObservable z = pauli_embed(Axis::Z, 0, 1);
  const DensityMatrix g = DensityMatrix::ground_state(1);
  const DensityMatrix e = apply_unitary(g, pauli(Axis::X));
  const DensityMatrix half(1, 0.5 * g.matrix + 0.5 * e.matrix);
  CHECK(expectation(half, z) == doctest::Approx(0.0));
}

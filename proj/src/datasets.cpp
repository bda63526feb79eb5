#include "qrnn/datasets.hpp"

#include <cmath>

namespace qrnn {

TimeSeries gen_cosine(int total_len, int train_len) {
  TimeSeries s;
  s.train_len = train_len;
  s.values.reserve(total_len);
  for (int t = 0; t < total_len; ++t) {
    const double tp = 8.0 * t / 199.0;
    s.values.push_back(std::cos(kPi * tp) / 2.0);
  }
  s.validate();
  return s;
}

double triangle_value(double t_prime) {
  // Pieces on [0, 4] repeat with period 2.
  const double r = std::fmod(t_prime, 2.0);
  return r <= 1.0 ? -r + 0.5 : r - 1.5;
}

TimeSeries gen_triangle(int total_len, int train_len) {
  TimeSeries s;
  s.train_len = train_len;
  s.values.reserve(total_len);
  for (int t = 0; t < total_len; ++t)
    s.values.push_back(triangle_value(8.0 * t / 199.0));
  s.validate();
  return s;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& sigma,
                           const LindbladSystem& system) {
  const ComplexMatrix& h = system.hamiltonian.matrix;
  if (sigma.rows() != h.rows() || sigma.cols() != h.cols())
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  ComplexMatrix out = Complex(0, -1) * (h * sigma - sigma * h);
  for (const ComplexMatrix& c : system.collapse_ops) {
    const ComplexMatrix cdc = c.adjoint() * c;
    out += c * sigma * c.adjoint() - 0.5 * (cdc * sigma + sigma * cdc);
  }
  return out;
}

std::vector<DensityMatrix> integrate_lindblad_rk4(
    const LindbladSystem& system, const DensityMatrix& sigma0,
    const std::vector<double>& sample_times, int substeps) {
  if (substeps < 1)
    throw std::invalid_argument("integrate_lindblad_rk4: substeps < 1");
  for (size_t i = 0; i + 1 < sample_times.size(); ++i)
    if (!(sample_times[i] < sample_times[i + 1]))
      throw std::invalid_argument(
          "integrate_lindblad_rk4: sample times must increase");
  if (!sample_times.empty() && sample_times.front() < 0)
    throw std::invalid_argument("integrate_lindblad_rk4: negative start time");

  const Eigen::Index dim = sigma0.dim();
  // The generator is linear; precompute it as a superoperator acting on
  // vec(σ) so each RK4 stage is a single dense matvec.
  ComplexMatrix liouvillian(dim * dim, dim * dim);
  {
    ComplexMatrix basis = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
      for (Eigen::Index row = 0; row < dim; ++row) {
        basis(row, col) = 1.0;
        const ComplexMatrix rhs = lindblad_rhs(basis, system);
        basis(row, col) = 0.0;
        liouvillian.col(col * dim + row) =
            Eigen::Map<const Eigen::VectorXcd>(rhs.data(), dim * dim);
      }
  }

  Eigen::VectorXcd v =
      Eigen::Map<const Eigen::VectorXcd>(sigma0.matrix.data(), dim * dim);
  std::vector<DensityMatrix> samples;
  samples.reserve(sample_times.size());
  double t_now = 0.0;
  Eigen::VectorXcd k1, k2, k3, k4;
  for (double t_sample : sample_times) {
    const double span = t_sample - t_now;
    if (span > 0) {
      const double h = span / substeps;
      for (int s = 0; s < substeps; ++s) {
        k1 = liouvillian * v;
        k2 = liouvillian * (v + (h / 2) * k1);
        k3 = liouvillian * (v + (h / 2) * k2);
        k4 = liouvillian * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t_now = t_sample;
    }
    ComplexMatrix sigma =
        Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
    const double trace_drift = std::abs(sigma.trace() - Complex(1, 0));
    const double herm_drift = (sigma - sigma.adjoint()).cwiseAbs().maxCoeff();
    if (trace_drift > 1e-8 || herm_drift > 1e-9)
      throw std::runtime_error(
          "integrate_lindblad_rk4: invariant drift beyond slack; "
          "increase substeps");
    sigma = 0.5 * (sigma + sigma.adjoint().eval());
    sigma /= sigma.trace().real();
    samples.emplace_back(sigma0.n_qubits, std::move(sigma));
  }
  return samples;
}

LindbladSystem make_three_spin_system(double collapse_strength) {
  const int n = 3;
  const double field = 2.0 * kPi;
  const double coupling = 0.1 * kPi;
  const Eigen::Index dim = Eigen::Index(1) << n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i)
    h -= 0.5 * field * pauli_embed(Axis::Z, i, n).matrix;
  for (int i = 0; i < n - 1; ++i)
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z})
      h -= 0.5 * coupling * (pauli_embed(axis, i, n).matrix *
                             pauli_embed(axis, i + 1, n).matrix);
  LindbladSystem system{HermitianObservable(std::move(h)), {}, n};
  for (int i = 0; i < n; ++i)
    system.collapse_ops.push_back(
        collapse_strength * (pauli_embed(Axis::X, i, n).matrix +
                             pauli_embed(Axis::Y, i, n).matrix));
  return system;
}

TimeSeries gen_spin_series(int total_len, int train_len, int substeps) {
  const LindbladSystem system = make_three_spin_system(std::sqrt(0.002));
  std::vector<double> times;
  times.reserve(total_len);
  for (int t = 0; t < total_len; ++t) times.push_back(100.0 * t / 499.0);
  const std::vector<DensityMatrix> trajectory = integrate_lindblad_rk4(
      system, DensityMatrix::ground_state(3), times, substeps);
  const HermitianObservable x1 = pauli_embed(Axis::X, 0, 3);
  TimeSeries s;
  s.train_len = train_len;
  s.values.reserve(total_len);
  for (const DensityMatrix& sigma : trajectory)
    s.values.push_back(expectation(sigma, x1));
  s.validate();
  return s;
}

}  // namespace qrnn

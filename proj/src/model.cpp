#include "qrnn/model.hpp"

#include <algorithm>
#include <cmath>

namespace qrnn {

int QrnnArchitecture::coupling_index(int j, int k) {
  if (j <= k) throw std::invalid_argument("coupling_index: requires j > k");
  return j * (j - 1) / 2 + k;
}

void QrnnArchitecture::validate() const {
  const int n = n_qubits();
  if (n_a < 1 || n_b < 1 || depth < 1 || tau < 0)
    throw std::invalid_argument("QrnnArchitecture: invalid structure");
  if (int(a.size()) != n)
    throw std::invalid_argument("QrnnArchitecture: field coefficient count");
  if (int(j.size()) != n * (n - 1) / 2)
    throw std::invalid_argument("QrnnArchitecture: coupling count");
}

QrnnParameters QrnnParameters::zeros(int n_qubits, int depth) {
  QrnnParameters p;
  p.n_qubits = n_qubits;
  p.depth = depth;
  p.angles.assign(size_t(3) * n_qubits * depth, 0.0);
  p.c_out = 1.0;
  return p;
}

std::vector<double> QrnnParameters::to_flat() const {
  std::vector<double> flat = angles;
  flat.push_back(c_out);
  return flat;
}

QrnnParameters QrnnParameters::from_flat(const std::vector<double>& flat,
                                         int n_qubits, int depth) {
  QrnnParameters p;
  p.n_qubits = n_qubits;
  p.depth = depth;
  if (int(flat.size()) != 3 * n_qubits * depth + 1)
    throw std::invalid_argument("QrnnParameters: flat layout length mismatch");
  p.angles.assign(flat.begin(), flat.end() - 1);
  p.c_out = flat.back();
  return p;
}

void TimeSeries::validate() const {
  for (double v : values)
    if (!(v >= -1.0 && v <= 1.0))
      throw std::invalid_argument("TimeSeries: value outside [-1, 1]");
  if (train_len < 2 || train_len > int(values.size()))
    throw std::invalid_argument("TimeSeries: invalid train length");
}

std::vector<double> TimeSeries::train_slice() const {
  return {values.begin(), values.begin() + train_len};
}

Eigen::VectorXd input_amplitudes(double x, int n_b) {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("input encoding requires |x| <= 1");
  const double phi = std::acos(x);
  const double c = std::cos(phi / 2.0);
  const double s = std::sin(phi / 2.0);
  const Eigen::Index d = Eigen::Index(1) << n_b;
  Eigen::VectorXd psi(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    double amp = 1.0;
    for (int q = 0; q < n_b; ++q)
      amp *= ((m >> (n_b - q - 1)) & 1) ? s : c;
    psi(m) = amp;
  }
  return psi;
}

ComplexMatrix build_input_unitary(double x, int n_b) {
  if (!(std::abs(x) <= 1.0))
    throw std::domain_error("build_input_unitary requires |x| <= 1");
  const ComplexMatrix ry = rotation_gate(Axis::Y, std::acos(x));
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < n_b; ++q) u = kron(u, ry);
  return u;
}

DensityMatrix input_state_b(double x, int n_b) {
  const Eigen::VectorXd psi = input_amplitudes(x, n_b);
  return DensityMatrix(n_b, psi.cast<Complex>() * psi.cast<Complex>().adjoint());
}

HermitianObservable build_interaction_hamiltonian(
    const QrnnArchitecture& arch) {
  arch.validate();
  const int n = arch.n_qubits();
  ComplexMatrix h = ComplexMatrix::Zero(arch.dim(), arch.dim());
  for (int q = 0; q < n; ++q)
    h += arch.a[q] * pauli_embed(Axis::X, q, n).matrix;
  for (int j = 1; j < n; ++j)
    for (int k = 0; k < j; ++k)
      h += arch.coupling(j, k) * (pauli_embed(Axis::Z, j, n).matrix *
                                  pauli_embed(Axis::Z, k, n).matrix);
  return HermitianObservable(std::move(h));
}

ComplexMatrix build_layer_rotation(const QrnnArchitecture& arch,
                                   const QrnnParameters& params, int layer) {
  ComplexMatrix r = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < arch.n_qubits(); ++q) {
    const ComplexMatrix u1 = rotation_gate(Axis::X, params.angle(layer, q, 0)) *
                             rotation_gate(Axis::Z, params.angle(layer, q, 1)) *
                             rotation_gate(Axis::X, params.angle(layer, q, 2));
    r = kron(r, u1);
  }
  return r;
}

ComplexMatrix build_evolution_unitary(const QrnnArchitecture& arch,
                                      const QrnnParameters& params) {
  arch.validate();
  if (params.n_qubits != arch.n_qubits() || params.depth != arch.depth)
    throw std::invalid_argument("build_evolution_unitary: parameter layout");
  const ComplexMatrix expm =
      unitary_from_hamiltonian(build_interaction_hamiltonian(arch), arch.tau);
  ComplexMatrix u = ComplexMatrix::Identity(arch.dim(), arch.dim());
  for (int d = 0; d < arch.depth; ++d)
    u = expm * build_layer_rotation(arch, params, d) * u;
  return u;
}

QrnnState QrnnState::initial(const QrnnArchitecture& arch,
                             const QrnnParameters& params) {
  return {DensityMatrix::ground_state(arch.n_a),
          build_evolution_unitary(arch, params)};
}

StepResult qrnn_step(const QrnnState& state, double x,
                     const QrnnArchitecture& arch,
                     const QrnnParameters& params) {
  const DensityMatrix rho_b = input_state_b(x, arch.n_b);
  const DensityMatrix rho_in(
      arch.n_qubits(), kron(state.rho_a.matrix, rho_b.matrix));
  const DensityMatrix rho_full(
      arch.n_qubits(),
      state.evolution * rho_in.matrix * state.evolution.adjoint());
  std::vector<double> z(arch.n_b);
  for (int q = 0; q < arch.n_b; ++q)
    z[q] = expectation(rho_full,
                       pauli_embed(Axis::Z, arch.n_a + q, arch.n_qubits()));
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= arch.n_b;
  StepResult out{
      {partial_trace_trailing(rho_full, arch.n_a, arch.n_b), state.evolution},
      std::move(z),
      params.c_out * mean};
  return out;
}

QrnnSimulator::QrnnSimulator(const QrnnArchitecture& arch,
                             const QrnnParameters& params)
    : arch_(arch), params_(params) {
  expm_ = unitary_from_hamiltonian(build_interaction_hamiltonian(arch_),
                                   arch_.tau);
  evolution_ = ComplexMatrix::Identity(arch_.dim(), arch_.dim());
  for (int d = 0; d < arch_.depth; ++d)
    evolution_ = expm_ * build_layer_rotation(arch_, params_, d) * evolution_;
  if (!is_unitary(evolution_, 1e-9))
    throw std::runtime_error("QrnnSimulator: evolution unitary drifted");

  const int n = arch_.n_qubits();
  zbar_.resize(arch_.dim());
  for (Eigen::Index idx = 0; idx < arch_.dim(); ++idx) {
    double acc = 0.0;
    for (int q = arch_.n_a; q < n; ++q)
      acc += ((idx >> (n - q - 1)) & 1) ? -1.0 : 1.0;
    zbar_(idx) = acc / arch_.n_b;
  }
}

ComplexMatrix QrnnSimulator::injection(double x) const {
  const Eigen::VectorXd psi = input_amplitudes(x, arch_.n_b);
  const Eigen::Index da = arch_.dim_a();
  const Eigen::Index db = arch_.dim_b();
  ComplexMatrix w = ComplexMatrix::Zero(arch_.dim(), da);
  for (Eigen::Index u = 0; u < da; ++u)
    for (Eigen::Index m = 0; m < db; ++m)
      w.col(u) += psi(m) * evolution_.col(u * db + m);
  return w;
}

double QrnnSimulator::step_in_place(ComplexMatrix& rho_a, double x) const {
  const ComplexMatrix w = injection(x);
  const Eigen::Index da = arch_.dim_a();
  const Eigen::Index db = arch_.dim_b();
  const ComplexMatrix xw = w * rho_a;  // 2^n x 2^{n_A}

  double m = 0.0;
  for (Eigen::Index jrow = 0; jrow < arch_.dim(); ++jrow)
    m += zbar_(jrow) * (xw.row(jrow) * w.row(jrow).adjoint())(0, 0).real();

  ComplexMatrix next = ComplexMatrix::Zero(da, da);
  for (Eigen::Index r = 0; r < da; ++r)
    for (Eigen::Index s = 0; s < da; ++s) {
      Complex acc(0, 0);
      for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index u = 0; u < da; ++u)
          acc += xw(r * db + k, u) * std::conj(w(s * db + k, u));
      next(r, s) = acc;
    }
  rho_a = std::move(next);
  return m;
}

std::vector<double> QrnnSimulator::mean_z_teacher_forced(
    const std::vector<double>& inputs) const {
  ComplexMatrix rho_a = DensityMatrix::ground_state(arch_.n_a).matrix;
  std::vector<double> m;
  m.reserve(inputs.size());
  for (double x : inputs) m.push_back(step_in_place(rho_a, x));
  return m;
}

std::vector<double> run_teacher_forced(const QrnnArchitecture& arch,
                                       const QrnnParameters& params,
                                       const std::vector<double>& inputs) {
  const QrnnSimulator sim(arch, params);
  std::vector<double> out = sim.mean_z_teacher_forced(inputs);
  for (double& v : out) v *= params.c_out;
  return out;
}

std::vector<double> run_closed_loop(const QrnnArchitecture& arch,
                                    const QrnnParameters& params,
                                    const std::vector<double>& seed_inputs,
                                    int horizon) {
  if (seed_inputs.empty())
    throw std::invalid_argument("run_closed_loop: empty seed");
  if (horizon < 0)
    throw std::invalid_argument("run_closed_loop: negative horizon");
  const QrnnSimulator sim(arch, params);
  ComplexMatrix rho_a = DensityMatrix::ground_state(arch.n_a).matrix;
  double y = 0.0;
  for (double x : seed_inputs) y = params.c_out * sim.step_in_place(rho_a, x);
  std::vector<double> predictions{y};
  for (int h = 0; h < horizon; ++h) {
    const double x = std::clamp(y, -1.0, 1.0);
    y = params.c_out * sim.step_in_place(rho_a, x);
    predictions.push_back(y);
  }
  return predictions;
}

}  // namespace qrnn

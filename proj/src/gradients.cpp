#include "qrnn/gradients.hpp"

#include <cmath>

namespace qrnn {

namespace {

void check_lengths(const std::vector<double>& inputs,
                   const std::vector<double>& targets) {
  if (targets.size() + 1 != inputs.size())
    throw std::invalid_argument("gradient: need len(targets) = len(inputs)-1");
}

/// Local 2x2 generator Q such that dU1/dtheta = (-i/2) Q U1 for the given
/// angle slot of U1(alpha, beta, gamma) = Rx(alpha) Rz(beta) Rx(gamma).
ComplexMatrix local_generator(const QrnnParameters& params, int layer,
                              int qubit, int slot) {
  switch (slot) {
    case 0:
      return pauli(Axis::X);
    case 1: {
      const ComplexMatrix rx = rotation_gate(Axis::X, params.angle(layer, qubit, 0));
      return rx * pauli(Axis::Z) * rx.adjoint();
    }
    default: {
      const ComplexMatrix pre =
          rotation_gate(Axis::X, params.angle(layer, qubit, 0)) *
          rotation_gate(Axis::Z, params.angle(layer, qubit, 1));
      return pre * pauli(Axis::X) * pre.adjoint();
    }
  }
}

ComplexMatrix embed_local(const ComplexMatrix& q2, int qubit, int n) {
  ComplexMatrix m = identity_matrix(Eigen::Index(1) << qubit);
  m = kron(m, q2);
  return kron(m, identity_matrix(Eigen::Index(1) << (n - qubit - 1)));
}

ComplexMatrix trace_out_b(const ComplexMatrix& m, Eigen::Index da,
                          Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Eigen::Index r = 0; r < da; ++r)
    for (Eigen::Index s = 0; s < da; ++s) {
      Complex acc(0, 0);
      for (Eigen::Index k = 0; k < db; ++k) acc += m(r * db + k, s * db + k);
      out(r, s) = acc;
    }
  return out;
}

}  // namespace

Eigen::VectorXd mean_z_diagonal(int n_a, int n_b) {
  const int n = n_a + n_b;
  Eigen::VectorXd z(Eigen::Index(1) << n);
  for (Eigen::Index idx = 0; idx < z.size(); ++idx) {
    double acc = 0.0;
    for (int q = n_a; q < n; ++q)
      acc += ((idx >> (n - q - 1)) & 1) ? -1.0 : 1.0;
    z(idx) = acc / n_b;
  }
  return z;
}

std::vector<ComplexMatrix> evolution_unitary_derivatives(
    const QrnnArchitecture& arch, const QrnnParameters& params) {
  const int n = arch.n_qubits();
  const int depth = arch.depth;
  const ComplexMatrix expm =
      unitary_from_hamiltonian(build_interaction_hamiltonian(arch), arch.tau);

  std::vector<ComplexMatrix> rot(depth), block(depth);
  for (int d = 0; d < depth; ++d) {
    rot[d] = build_layer_rotation(arch, params, d);
    block[d] = expm * rot[d];
  }
  // prefix[d] = block[d-1] ... block[0]; suffix[d] = block[D-1] ... block[d+1]
  std::vector<ComplexMatrix> prefix(depth + 1), suffix(depth + 1);
  prefix[0] = identity_matrix(arch.dim());
  for (int d = 0; d < depth; ++d) prefix[d + 1] = block[d] * prefix[d];
  suffix[depth - 1] = identity_matrix(arch.dim());
  for (int d = depth - 2; d >= 0; --d) suffix[d] = suffix[d + 1] * block[d + 1];

  std::vector<ComplexMatrix> deriv(params.n_angles());
  const Complex half_i(0, -0.5);
  for (int d = 0; d < depth; ++d)
    for (int q = 0; q < n; ++q)
      for (int slot = 0; slot < 3; ++slot) {
        const ComplexMatrix gen =
            embed_local(local_generator(params, d, q, slot), q, n);
        deriv[params.angle_index(d, q, slot)] =
            suffix[d] * expm * (half_i * gen) * rot[d] * prefix[d];
      }
  return deriv;
}

double qrnn_sequence_cost(const QrnnArchitecture& arch,
                          const QrnnParameters& params,
                          const std::vector<double>& inputs,
                          const std::vector<double>& targets) {
  check_lengths(inputs, targets);
  const QrnnSimulator sim(arch, params);
  ComplexMatrix rho_a = DensityMatrix::ground_state(arch.n_a).matrix;
  double cost = 0.0;
  for (size_t t = 0; t < targets.size(); ++t) {
    const double y = params.c_out * sim.step_in_place(rho_a, inputs[t]);
    const double r = y - targets[t];
    cost += 0.5 * r * r;
  }
  return cost;
}

GradientVector grad_forward_sensitivity(const QrnnArchitecture& arch,
                                        const QrnnParameters& params,
                                        const std::vector<double>& inputs,
                                        const std::vector<double>& targets) {
  check_lengths(inputs, targets);
  const Eigen::Index da = arch.dim_a();
  const Eigen::Index db = arch.dim_b();
  const ComplexMatrix u = build_evolution_unitary(arch, params);
  const ComplexMatrix udag = u.adjoint();
  const std::vector<ComplexMatrix> deriv =
      evolution_unitary_derivatives(arch, params);
  const Eigen::VectorXd zfull = mean_z_diagonal(arch.n_a, arch.n_b);
  const int n_angles = params.n_angles();

  SensitivityState state{DensityMatrix::ground_state(arch.n_a),
                         std::vector<ComplexMatrix>(
                             n_angles, ComplexMatrix::Zero(da, da))};
  GradientVector grad(params.flat_size(), 0.0);

  for (size_t t = 0; t < targets.size(); ++t) {
    const ComplexMatrix rho_b = input_state_b(inputs[t], arch.n_b).matrix;
    const ComplexMatrix rho_in = kron(state.rho_a.matrix, rho_b);
    const ComplexMatrix f = rho_in * udag;
    const ComplexMatrix rho_full = u * f;

    double m = 0.0;
    for (Eigen::Index jr = 0; jr < rho_full.rows(); ++jr)
      m += zfull(jr) * rho_full(jr, jr).real();
    const double r = params.c_out * m - targets[t];

    for (int i = 0; i < n_angles; ++i) {
      const ComplexMatrix shifted = deriv[i] * f;
      const ComplexMatrix sig_full =
          u * kron(state.sigma[i], rho_b) * udag + shifted + shifted.adjoint();
      double dm = 0.0;
      for (Eigen::Index jr = 0; jr < sig_full.rows(); ++jr)
        dm += zfull(jr) * sig_full(jr, jr).real();
      grad[i] += r * params.c_out * dm;
      state.sigma[i] = trace_out_b(sig_full, da, db);
    }
    grad[n_angles] += r * m;
    state.rho_a =
        DensityMatrix(arch.n_a, trace_out_b(rho_full, da, db));
  }
  return grad;
}

ParameterShiftResult grad_parameter_shift(const QrnnArchitecture& arch,
                                          const QrnnParameters& params,
                                          const std::vector<double>& inputs,
                                          const std::vector<double>& targets) {
  check_lengths(inputs, targets);
  const size_t steps = targets.size();
  const QrnnSimulator nominal(arch, params);

  // Nominal trajectory: rho_A entering each step, readout, residual.
  std::vector<ComplexMatrix> rho_before(steps);
  std::vector<double> mean_z(steps), residual(steps);
  {
    ComplexMatrix rho_a = DensityMatrix::ground_state(arch.n_a).matrix;
    for (size_t t = 0; t < steps; ++t) {
      rho_before[t] = rho_a;
      mean_z[t] = nominal.step_in_place(rho_a, inputs[t]);
      residual[t] = params.c_out * mean_z[t] - targets[t];
    }
  }

  ParameterShiftResult out;
  out.gradient.assign(params.flat_size(), 0.0);
  const int n_angles = params.n_angles();

  for (int i = 0; i < n_angles; ++i) {
    for (int sign : {+1, -1}) {
      QrnnParameters shifted = params;
      shifted.angles[i] += sign * kPi / 2.0;
      const QrnnSimulator sim_shift(arch, shifted);
      for (size_t s = 0; s < steps; ++s) {
        // One full sequence evaluation with the shift applied at the
        // time-step-s occurrence of theta_i only.
        ComplexMatrix rho_a = rho_before[s];
        double m = sim_shift.step_in_place(rho_a, inputs[s]);
        out.gradient[i] +=
            residual[s] * params.c_out * 0.5 * sign * m;
        for (size_t t = s + 1; t < steps; ++t) {
          m = nominal.step_in_place(rho_a, inputs[t]);
          out.gradient[i] +=
              residual[t] * params.c_out * 0.5 * sign * m;
        }
        ++out.evaluation_count;
      }
    }
  }
  for (size_t t = 0; t < steps; ++t)
    out.gradient[n_angles] += residual[t] * mean_z[t];
  return out;
}

GradientVector grad_finite_difference(const QrnnArchitecture& arch,
                                      const QrnnParameters& params,
                                      const std::vector<double>& inputs,
                                      const std::vector<double>& targets,
                                      double h) {
  check_lengths(inputs, targets);
  if (!(h > 0)) throw std::invalid_argument("grad_finite_difference: h <= 0");
  std::vector<double> flat = params.to_flat();
  GradientVector grad(flat.size(), 0.0);
  for (size_t i = 0; i < flat.size(); ++i) {
    std::vector<double> up = flat, down = flat;
    up[i] += h;
    down[i] -= h;
    const double cu = qrnn_sequence_cost(
        arch, QrnnParameters::from_flat(up, params.n_qubits, params.depth),
        inputs, targets);
    const double cd = qrnn_sequence_cost(
        arch, QrnnParameters::from_flat(down, params.n_qubits, params.depth),
        inputs, targets);
    grad[i] = (cu - cd) / (2.0 * h);
  }
  return grad;
}

ReverseAccumulator::ReverseAccumulator(QrnnArchitecture arch)
    : arch_(std::move(arch)) {
  arch_.validate();
  expm_ = unitary_from_hamiltonian(build_interaction_hamiltonian(arch_),
                                   arch_.tau);
  zfull_ = mean_z_diagonal(arch_.n_a, arch_.n_b);
}

ComplexMatrix ReverseAccumulator::build_unitary(
    const QrnnParameters& params, std::vector<ComplexMatrix>* layers) const {
  if (layers) layers->resize(arch_.depth);
  ComplexMatrix u = identity_matrix(arch_.dim());
  for (int d = 0; d < arch_.depth; ++d) {
    ComplexMatrix rot = build_layer_rotation(arch_, params, d);
    u = expm_ * rot * u;
    if (layers) (*layers)[d] = std::move(rot);
  }
  return u;
}

double ReverseAccumulator::cost(const QrnnParameters& params,
                                const std::vector<double>& inputs,
                                const std::vector<double>& targets) const {
  check_lengths(inputs, targets);
  const Eigen::Index da = arch_.dim_a();
  const Eigen::Index db = arch_.dim_b();
  const Eigen::Index d = arch_.dim();
  const ComplexMatrix u = build_unitary(params, nullptr);

  ComplexMatrix rho = ComplexMatrix::Zero(da, da);
  rho(0, 0) = 1.0;
  double cost = 0.0;
  ComplexMatrix w(d, da), xw(d, da);
  for (size_t t = 0; t < targets.size(); ++t) {
    const Eigen::VectorXd psi = input_amplitudes(inputs[t], arch_.n_b);
    w.setZero();
    for (Eigen::Index col = 0; col < da; ++col)
      for (Eigen::Index m = 0; m < db; ++m)
        w.col(col) += psi(m) * u.col(col * db + m);
    xw.noalias() = w * rho;
    double m_t = 0.0;
    for (Eigen::Index jr = 0; jr < d; ++jr)
      m_t += zfull_(jr) * (xw.row(jr) * w.row(jr).adjoint())(0, 0).real();
    const double r = params.c_out * m_t - targets[t];
    cost += 0.5 * r * r;
    ComplexMatrix next = ComplexMatrix::Zero(da, da);
    for (Eigen::Index rr = 0; rr < da; ++rr)
      for (Eigen::Index ss = 0; ss < da; ++ss) {
        Complex acc(0, 0);
        for (Eigen::Index k = 0; k < db; ++k)
          for (Eigen::Index uu = 0; uu < da; ++uu)
            acc += xw(rr * db + k, uu) * std::conj(w(ss * db + k, uu));
        next(rr, ss) = acc;
      }
    rho = std::move(next);
  }
  return cost;
}

GradientVector ReverseAccumulator::gradient(const QrnnParameters& params,
                                            const std::vector<double>& inputs,
                                            const std::vector<double>& targets,
                                            double* cost_out) const {
  check_lengths(inputs, targets);
  const Eigen::Index da = arch_.dim_a();
  const Eigen::Index db = arch_.dim_b();
  const Eigen::Index d = arch_.dim();
  const size_t steps = targets.size();
  const double c = params.c_out;

  std::vector<ComplexMatrix> layers;
  const ComplexMatrix u = build_unitary(params, &layers);

  // Forward pass: store the injection matrix and entry state of every step.
  std::vector<ComplexMatrix> w_all(steps), rho_before(steps);
  std::vector<double> mean_z(steps), residual(steps);
  {
    ComplexMatrix rho = ComplexMatrix::Zero(da, da);
    rho(0, 0) = 1.0;
    for (size_t t = 0; t < steps; ++t) {
      const Eigen::VectorXd psi = input_amplitudes(inputs[t], arch_.n_b);
      ComplexMatrix w = ComplexMatrix::Zero(d, da);
      for (Eigen::Index col = 0; col < da; ++col)
        for (Eigen::Index m = 0; m < db; ++m)
          w.col(col) += psi(m) * u.col(col * db + m);
      rho_before[t] = rho;
      const ComplexMatrix xw = w * rho;
      double m_t = 0.0;
      for (Eigen::Index jr = 0; jr < d; ++jr)
        m_t += zfull_(jr) * (xw.row(jr) * w.row(jr).adjoint())(0, 0).real();
      mean_z[t] = m_t;
      residual[t] = c * m_t - targets[t];
      ComplexMatrix next = ComplexMatrix::Zero(da, da);
      for (Eigen::Index rr = 0; rr < da; ++rr)
        for (Eigen::Index ss = 0; ss < da; ++ss) {
          Complex acc(0, 0);
          for (Eigen::Index k = 0; k < db; ++k)
            for (Eigen::Index uu = 0; uu < da; ++uu)
              acc += xw(rr * db + k, uu) * std::conj(w(ss * db + k, uu));
          next(rr, ss) = acc;
        }
      rho = std::move(next);
      w_all[t] = std::move(w);
    }
  }

  // Backward pass: adjoint Lambda_s represents the sensitivity of all later
  // readouts to an injection into rho_A after step s; Xi accumulates the
  // per-step couplings so the parameter loop runs once at the end.
  ComplexMatrix lambda = ComplexMatrix::Zero(da, da);  // Lambda_{S-1} = 0
  ComplexMatrix xi = ComplexMatrix::Zero(d, d);
  for (size_t s_plus = steps; s_plus-- > 0;) {
    const size_t s = s_plus;
    const ComplexMatrix& w = w_all[s];
    const Eigen::VectorXd psi = input_amplitudes(inputs[s], arch_.n_b);

    // (Lambda_s ⊗ I_B) W, reused for both the recursion and Xi.
    ComplexMatrix lw = ComplexMatrix::Zero(d, da);
    for (Eigen::Index p = 0; p < da; ++p)
      for (Eigen::Index pp = 0; pp < da; ++pp)
        if (lambda(p, pp) != Complex(0, 0))
          for (Eigen::Index m = 0; m < db; ++m)
            lw.row(p * db + m) += lambda(p, pp) * w.row(pp * db + m);

    // Y_s = rho_{s-1} W† (Lambda_s ⊗ I + r_s c Zbar); then Xi += J_s Y_s.
    const ComplexMatrix t1 = rho_before[s] * w.adjoint();  // dA x d
    ComplexMatrix y = ComplexMatrix::Zero(da, d);
    for (Eigen::Index pcol = 0; pcol < da; ++pcol)
      for (Eigen::Index m = 0; m < db; ++m) {
        const Eigen::Index col = pcol * db + m;
        for (Eigen::Index pp = 0; pp < da; ++pp)
          y.col(col) += t1.col(pp * db + m) * lambda(pp, pcol);
        y.col(col) += residual[s] * c * zfull_(col) * t1.col(col);
      }
    for (Eigen::Index p = 0; p < da; ++p)
      for (Eigen::Index m = 0; m < db; ++m)
        xi.row(p * db + m) += psi(m) * y.row(p);

    // Lambda_{s-1} = r_s c C_s + W† (Lambda_s ⊗ I) W with C_s = W† Zbar W.
    ComplexMatrix zw = zfull_.cast<Complex>().asDiagonal() * w;
    lambda = w.adjoint() * (residual[s] * c * zw + lw);
  }

  // grad_i = 2 Re Tr[D_i Xi] = Im Tr[Q_i^emb (B_d Xi A_d)] per layer.
  std::vector<ComplexMatrix> prefix(arch_.depth + 1), block(arch_.depth);
  prefix[0] = identity_matrix(d);
  for (int dd = 0; dd < arch_.depth; ++dd) {
    block[dd] = expm_ * layers[dd];
    prefix[dd + 1] = block[dd] * prefix[dd];
  }
  std::vector<ComplexMatrix> suffix(arch_.depth);
  suffix[arch_.depth - 1] = identity_matrix(d);
  for (int dd = arch_.depth - 2; dd >= 0; --dd)
    suffix[dd] = suffix[dd + 1] * block[dd + 1];

  GradientVector grad(params.flat_size(), 0.0);
  const int n = arch_.n_qubits();
  for (int dd = 0; dd < arch_.depth; ++dd) {
    // B_d Xi A_d with A_d = suffix·expm, B_d = rot_d·prefix.
    const ComplexMatrix z =
        (layers[dd] * prefix[dd]) * xi * (suffix[dd] * expm_);
    for (int q = 0; q < n; ++q) {
      // Reduced 2x2 block of z at qubit q.
      ComplexMatrix red = ComplexMatrix::Zero(2, 2);
      const Eigen::Index hi = Eigen::Index(1) << q;
      const Eigen::Index lo = Eigen::Index(1) << (n - q - 1);
      for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2)
          for (Eigen::Index a = 0; a < hi; ++a)
            for (Eigen::Index b = 0; b < lo; ++b)
              red(b1, b2) += z((a * 2 + b1) * lo + b, (a * 2 + b2) * lo + b);
      for (int slot = 0; slot < 3; ++slot) {
        const ComplexMatrix gen = local_generator(params, dd, q, slot);
        grad[params.angle_index(dd, q, slot)] =
            (gen(0, 0) * red(0, 0) + gen(0, 1) * red(1, 0) +
             gen(1, 0) * red(0, 1) + gen(1, 1) * red(1, 1))
                .imag();
      }
    }
  }

  double cost_acc = 0.0;
  for (size_t t = 0; t < steps; ++t) {
    grad[params.n_angles()] += residual[t] * mean_z[t];
    cost_acc += 0.5 * residual[t] * residual[t];
  }
  if (cost_out) *cost_out = cost_acc;
  return grad;
}

GradientVector grad_reverse_accumulation(const QrnnArchitecture& arch,
                                         const QrnnParameters& params,
                                         const std::vector<double>& inputs,
                                         const std::vector<double>& targets) {
  return ReverseAccumulator(arch).gradient(params, inputs, targets);
}

}  // namespace qrnn

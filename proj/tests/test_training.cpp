#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "qrnn/datasets.hpp"
#include "qrnn/gradients.hpp"
#include "qrnn/training.hpp"

using namespace qrnn;

TEST_CASE("cost helpers") {
  CHECK(cost_half_sse({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(cost_half_sse({1, 1, 1}, {0, 0, 0}) == doctest::Approx(1.5));
  CHECK(cost_half_sse({0.5}, {-0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(cost_half_sse({1}, {1, 2}), std::invalid_argument);
  CHECK(mse({1, 2}, {1, 2}) == 0.0);
  CHECK(mse({0.1, -0.1}, {0.0, 0.0}) == doctest::Approx(0.01));
  CHECK_THROWS_AS(mse({}, {}), std::invalid_argument);
}

TEST_CASE("mse on a slice matches hand computation") {
  std::vector<double> out, truth;
  for (int i = 0; i < 40; ++i) {
    out.push_back(std::sin(0.3 * i));
    truth.push_back(std::sin(0.3 * i) + 0.01 * i);
  }
  const std::vector<double> o25(out.begin(), out.begin() + 25);
  const std::vector<double> t25(truth.begin(), truth.begin() + 25);
  double acc = 0.0;
  for (int i = 0; i < 25; ++i) {
    const double r = out[i] - truth[i];
    acc += r * r;
  }
  CHECK(mse(o25, t25) == doctest::Approx(acc / 25).epsilon(1e-14));
}

TEST_CASE("config validation") {
  TrainConfig c;
  CHECK_NOTHROW(c.validate());
  c.wolfe_c1 = 0.95;  // violates c1 < c2
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

namespace {

CostOracle quadratic_cost = [](const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
};
GradOracle quadratic_grad = [](const std::vector<double>& x) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) g[i] = 2 * x[i];
  return g;
};

}  // namespace

TEST_CASE("bfgs solves an exact quadratic in a few iterations") {
  const BfgsResult res =
      bfgs_minimize(quadratic_cost, quadratic_grad, {3.0, -4.0}, TrainConfig{});
  CHECK(res.converged);
  CHECK(res.iterations <= 5);
  CHECK(std::hypot(res.x[0], res.x[1]) < 1e-8);
}

TEST_CASE("bfgs solves Rosenbrock") {
  const CostOracle cost = [](const std::vector<double>& v) {
    const double x = v[0], y = v[1];
    return 100 * (y - x * x) * (y - x * x) + (1 - x) * (1 - x);
  };
  const GradOracle grad = [](const std::vector<double>& v) {
    const double x = v[0], y = v[1];
    return std::vector<double>{-400 * x * (y - x * x) - 2 * (1 - x),
                               200 * (y - x * x)};
  };
  const BfgsResult res = bfgs_minimize(cost, grad, {-1.2, 1.0}, TrainConfig{});
  CHECK(std::abs(res.x[0] - 1.0) < 1e-6);
  CHECK(std::abs(res.x[1] - 1.0) < 1e-6);
}

TEST_CASE("bfgs tolerates a flat quartic tail") {
  const CostOracle cost = [](const std::vector<double>& v) {
    return std::pow(v[0] - 2.0, 4);
  };
  const GradOracle grad = [](const std::vector<double>& v) {
    return std::vector<double>{4 * std::pow(v[0] - 2.0, 3)};
  };
  TrainConfig config;
  config.grad_norm_tol = 1e-10;  // quartic gradient vanishes fast near x = 2
  const BfgsResult res = bfgs_minimize(cost, grad, {5.0}, config);
  CHECK(std::abs(res.x[0] - 2.0) < 1e-3);
}

TEST_CASE("accepted cost trace is non-increasing") {
  const CostOracle cost = [](const std::vector<double>& v) {
    double s = 0;
    for (size_t i = 0; i < v.size(); ++i)
      s += (1 + 0.3 * double(i)) * v[i] * v[i] + 0.1 * std::sin(3 * v[i]);
    return s;
  };
  const GradOracle grad = [&](const std::vector<double>& v) {
    std::vector<double> g(v.size());
    for (size_t i = 0; i < v.size(); ++i)
      g[i] = 2 * (1 + 0.3 * double(i)) * v[i] + 0.9 * std::cos(3 * v[i]);
    return g;
  };
  const BfgsResult res =
      bfgs_minimize(cost, grad, {1.0, -2.0, 0.7, 1.4}, TrainConfig{});
  REQUIRE(!res.cost_trace.empty());
  for (size_t i = 1; i < res.cost_trace.size(); ++i)
    CHECK(res.cost_trace[i] <= res.cost_trace[i - 1] + 1e-12);
}

TEST_CASE("non-finite oracles abort with the offending point") {
  const CostOracle cost = [](const std::vector<double>& v) {
    return v[0] > 10 ? std::nan("") : v[0] * v[0] - 30 * v[0];
  };
  const GradOracle grad = [](const std::vector<double>& v) {
    return std::vector<double>{2 * v[0] - 30};
  };
  CHECK_THROWS_AS(bfgs_minimize(cost, grad, {0.0}, TrainConfig{}),
                  NonFiniteObjective);
}

namespace {

QrnnArchitecture train_arch(double tau) {
  QrnnArchitecture arch;
  arch.n_a = 2;
  arch.n_b = 1;
  arch.depth = 2;
  arch.tau = tau;
  arch.a = {0.4, -0.7, 0.2};
  arch.j = {0.5, -0.3, 0.8};
  return arch;
}

}  // namespace

TEST_CASE("train_qrnn reduces the cost on a short cosine") {
  TimeSeries series = gen_cosine(40, 30);
  TrainConfig config;
  config.max_iterations = 60;
  const TrainResult res = train_qrnn(train_arch(0.2), series, config);
  REQUIRE(res.cost_trace.size() >= 2);
  CHECK(res.cost_trace.back() < res.cost_trace.front());
  for (size_t i = 1; i < res.cost_trace.size(); ++i)
    CHECK(res.cost_trace[i] <= res.cost_trace[i - 1] + 1e-12);
  CHECK(res.final_params.flat_size() == 19);
}

TEST_CASE("training a constant-zero series does not diverge") {
  TimeSeries series;
  series.values.assign(20, 0.0);
  series.train_len = 20;
  TrainConfig config;
  config.max_iterations = 30;
  const TrainResult res = train_qrnn(train_arch(0.5), series, config);
  CHECK(res.cost_trace.back() <= res.cost_trace.front() + 1e-15);
}

TEST_CASE("training is deterministic") {
  TimeSeries series = gen_cosine(30, 25);
  TrainConfig config;
  config.max_iterations = 25;
  const TrainResult a = train_qrnn(train_arch(0.3), series, config);
  const TrainResult b = train_qrnn(train_arch(0.3), series, config);
  CHECK(a.cost_trace == b.cost_trace);  // bitwise
  CHECK(a.final_params.angles == b.final_params.angles);
}

TEST_CASE("final gradient norm is consistent with the reported parameters") {
  TimeSeries series = gen_cosine(30, 20);
  TrainConfig config;
  config.max_iterations = 40;
  const QrnnArchitecture arch = train_arch(0.4);
  const TrainResult res = train_qrnn(arch, series, config);
  const std::vector<double> inputs = series.train_slice();
  const std::vector<double> targets(inputs.begin() + 1, inputs.end());
  const GradientVector g = grad_reverse_accumulation(arch, res.final_params,
                                                     inputs, targets);
  double norm = 0;
  for (double v : g) norm += v * v;
  CHECK(std::sqrt(norm) == doctest::Approx(res.final_grad_norm).epsilon(1e-9));
}

TEST_CASE("finite-difference oracle lands near the analytic optimum") {
  TimeSeries series = gen_cosine(40, 30);
  TrainConfig config;
  config.max_iterations = 300;
  const QrnnArchitecture arch = train_arch(0.2);
  const TrainResult analytic = train_qrnn(arch, series, config);

  const std::vector<double> inputs = series.train_slice();
  const std::vector<double> targets(inputs.begin() + 1, inputs.end());
  const GradOracle fd = [&](const std::vector<double>& flat) {
    const QrnnParameters p =
        QrnnParameters::from_flat(flat, arch.n_qubits(), arch.depth);
    return grad_finite_difference(arch, p, inputs, targets, 1e-6);
  };
  const TrainResult numeric = train_qrnn(arch, series, config, &fd);
  const double fa = analytic.cost_trace.back();
  const double fn = numeric.cost_trace.back();
  CHECK(std::abs(fa - fn) / std::max(fa, 1e-12) < 0.1);
}

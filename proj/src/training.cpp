#include "qrnn/training.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace qrnn {

void TrainConfig::validate() const {
  if (!(0 < wolfe_c1 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1))
    throw std::invalid_argument("TrainConfig: need 0 < c1 < c2 < 1");
  if (!(grad_norm_tol > 0) || max_iterations < 1 || max_line_search_steps < 1)
    throw std::invalid_argument("TrainConfig: invalid limits");
}

NonFiniteObjective::NonFiniteObjective(std::vector<double> x)
    : std::runtime_error([&x] {
        std::ostringstream os;
        os << "oracle returned a non-finite value at point [";
        for (size_t i = 0; i < x.size(); ++i)
          os << (i ? ", " : "") << x[i];
        os << "]";
        return os.str();
      }()),
      point(std::move(x)) {}

double cost_half_sse(const std::vector<double>& outputs,
                     const std::vector<double>& targets) {
  if (outputs.size() != targets.size())
    throw std::invalid_argument("cost_half_sse: length mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    const double r = outputs[i] - targets[i];
    acc += 0.5 * r * r;
  }
  return acc;
}

double mse(const std::vector<double>& outputs,
           const std::vector<double>& targets) {
  if (outputs.size() != targets.size())
    throw std::invalid_argument("mse: length mismatch");
  if (outputs.empty()) throw std::invalid_argument("mse: empty input");
  double acc = 0.0;
  for (size_t i = 0; i < outputs.size(); ++i) {
    const double r = outputs[i] - targets[i];
    acc += r * r;
  }
  return acc / double(outputs.size());
}

namespace {

using Vec = Eigen::VectorXd;

std::vector<double> to_std(const Vec& v) {
  return {v.data(), v.data() + v.size()};
}

struct Evaluation {
  double f = 0.0;
  Vec g;
  double slope = 0.0;  // gᵀp
};

class Objective {
 public:
  Objective(const CostOracle& cost, const GradOracle& grad)
      : cost_(cost), grad_(grad) {}

  double value(const Vec& x) const {
    const double f = cost_(to_std(x));
    if (!std::isfinite(f)) throw NonFiniteObjective(to_std(x));
    return f;
  }

  Vec gradient(const Vec& x) const {
    const std::vector<double> g = grad_(to_std(x));
    Vec out = Eigen::Map<const Vec>(g.data(), g.size());
    if (!out.allFinite()) throw NonFiniteObjective(to_std(x));
    return out;
  }

 private:
  const CostOracle& cost_;
  const GradOracle& grad_;
};

struct LineSearchResult {
  bool ok = false;
  double alpha = 0.0;
  double f = 0.0;
  Vec g;
};

Evaluation eval_phi(const Objective& obj, const Vec& x, const Vec& p,
                    double alpha) {
  const Vec xt = x + alpha * p;
  Evaluation e;
  e.f = obj.value(xt);
  e.g = obj.gradient(xt);
  e.slope = e.g.dot(p);
  return e;
}

/// Strong-Wolfe line search (bracket + zoom).
LineSearchResult line_search(const Objective& obj, const Vec& x, const Vec& p,
                             double f0, double slope0, double c1, double c2,
                             int max_steps) {
  LineSearchResult res;
  double alpha_prev = 0.0, f_prev = f0, slope_prev = slope0;
  double alpha = 1.0;
  double lo = 0.0, hi = 0.0, f_lo = f0, slope_lo = slope0;
  bool bracketed = false;
  Evaluation e;

  int used = 0;
  for (; used < max_steps; ++used) {
    e = eval_phi(obj, x, p, alpha);
    if (e.f > f0 + c1 * alpha * slope0 || (used > 0 && e.f >= f_prev)) {
      lo = alpha_prev;
      f_lo = f_prev;
      slope_lo = slope_prev;
      hi = alpha;
      bracketed = true;
      break;
    }
    if (std::abs(e.slope) <= -c2 * slope0) {
      res.ok = true;
      res.alpha = alpha;
      res.f = e.f;
      res.g = e.g;
      return res;
    }
    if (e.slope >= 0) {
      lo = alpha;
      f_lo = e.f;
      slope_lo = e.slope;
      hi = alpha_prev;
      bracketed = true;
      break;
    }
    alpha_prev = alpha;
    f_prev = e.f;
    slope_prev = e.slope;
    alpha *= 2.0;
  }
  if (!bracketed) return res;

  for (; used < max_steps; ++used) {
    const double trial = 0.5 * (lo + hi);
    e = eval_phi(obj, x, p, trial);
    if (e.f > f0 + c1 * trial * slope0 || e.f >= f_lo) {
      hi = trial;
    } else {
      if (std::abs(e.slope) <= -c2 * slope0) {
        res.ok = true;
        res.alpha = trial;
        res.f = e.f;
        res.g = e.g;
        return res;
      }
      if (e.slope * (hi - lo) >= 0) hi = lo;
      lo = trial;
      f_lo = e.f;
      slope_lo = e.slope;
    }
    if (std::abs(hi - lo) < 1e-14) break;
  }
  return res;
}

}  // namespace

BfgsResult bfgs_minimize(const CostOracle& cost, const GradOracle& grad,
                         const std::vector<double>& x0,
                         const TrainConfig& config) {
  config.validate();
  const Objective obj(cost, grad);
  const Eigen::Index n = Eigen::Index(x0.size());
  Vec x = Eigen::Map<const Vec>(x0.data(), n);
  double f = obj.value(x);
  Vec g = obj.gradient(x);

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  bool first_update = true;

  BfgsResult result;
  result.cost_trace.push_back(f);

  for (int iter = 0; iter < config.max_iterations; ++iter) {
    if (g.norm() < config.grad_norm_tol) {
      result.converged = true;
      break;
    }
    Vec p = -(h_inv * g);
    double slope = g.dot(p);
    if (!(slope < 0)) {  // lost positive-definiteness, restart
      h_inv.setIdentity();
      first_update = true;
      p = -g;
      slope = g.dot(p);
      if (!(slope < 0)) break;
    }
    const LineSearchResult ls =
        line_search(obj, x, p, f, slope, config.wolfe_c1, config.wolfe_c2,
                    config.max_line_search_steps);
    if (!ls.ok) break;

    const Vec s = ls.alpha * p;
    const Vec y = ls.g - g;
    const double sy = s.dot(y);
    if (sy > 1e-10) {
      if (first_update) {
        h_inv = (sy / y.squaredNorm()) * Eigen::MatrixXd::Identity(n, n);
        first_update = false;
      }
      const Vec hy = h_inv * y;
      const double yhy = y.dot(hy);
      h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
               (hy * s.transpose() + s * hy.transpose()) / sy;
    }
    x += s;
    f = ls.f;
    g = ls.g;
    result.cost_trace.push_back(f);
    result.iterations = iter + 1;
  }

  result.x = to_std(x);
  result.final_grad_norm = g.norm();
  return result;
}

TrainResult train_qrnn(const QrnnArchitecture& arch, const TimeSeries& series,
                       const TrainConfig& config,
                       const GradOracle* custom_grad) {
  series.validate();
  const std::vector<double> inputs(series.values.begin(),
                                   series.values.begin() + series.train_len);
  const std::vector<double> targets(inputs.begin() + 1, inputs.end());

  const int n = arch.n_qubits();
  const ReverseAccumulator acc(arch);
  const CostOracle cost = [&](const std::vector<double>& flat) {
    return acc.cost(QrnnParameters::from_flat(flat, n, arch.depth), inputs,
                    targets);
  };
  const GradOracle default_grad = [&](const std::vector<double>& flat) {
    return acc.gradient(QrnnParameters::from_flat(flat, n, arch.depth), inputs,
                        targets);
  };

  const std::vector<double> x0 =
      QrnnParameters::zeros(n, arch.depth).to_flat();
  const BfgsResult res = bfgs_minimize(
      cost, custom_grad ? *custom_grad : default_grad, x0, config);

  TrainResult out;
  out.final_params = QrnnParameters::from_flat(res.x, n, arch.depth);
  out.cost_trace = res.cost_trace;
  out.iterations = res.iterations;
  out.converged = res.converged;
  out.final_grad_norm = res.final_grad_norm;
  return out;
}

}  // namespace qrnn

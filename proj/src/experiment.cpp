#include "qrnn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qrnn/csv.hpp"
#include "qrnn/datasets.hpp"
#include "qrnn/gradients.hpp"
#include "qrnn/sampling.hpp"
#include "qrnn/svg.hpp"

namespace qrnn {
namespace {

std::string sanitize_status(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '"') c = ';';
  return s;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output directory " + dir + ": " +
                             ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

double rel_discrepancy(const std::vector<double>& a,
                       const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("rel_discrepancy: length mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    const double diff = std::abs(a[i] - b[i]);
    worst = std::max(worst, scale > 1e-10 ? diff / scale : diff);
  }
  return worst;
}

}  // namespace

TimeSeries generate_task_series(const ExperimentConfig& config) {
  switch (config.task) {
    case Task::kCosine: return gen_cosine();
    case Task::kTriangle: return gen_triangle();
    case Task::kSpin: return gen_spin_series(500, 200, config.lindblad_substeps);
  }
  throw std::logic_error("generate_task_series: bad task enum");
}

QrnnArchitecture make_architecture(const ExperimentConfig& config,
                                   int seed_index) {
  QrnnArchitecture arch;
  arch.n_a = config.n_a;
  arch.n_b = config.n_b;
  arch.depth = config.depth;
  arch.tau = config.tau;
  HamiltonianCoefficients coeff = sample_hamiltonian_coefficients(
      config.master_seed, std::uint64_t(seed_index), arch.n_qubits());
  arch.a = std::move(coeff.a);
  arch.j = std::move(coeff.j);
  arch.validate();
  return arch;
}

std::vector<double> closed_loop_predictions(const QrnnArchitecture& arch,
                                            const QrnnParameters& params,
                                            const TimeSeries& series) {
  series.validate();
  const int horizon = int(series.values.size()) - series.train_len - 1;
  if (horizon < 0)
    throw std::invalid_argument("closed_loop_predictions: no test region");
  return run_closed_loop(arch, params, series.train_slice(), horizon);
}

double test_window_mse(const QrnnArchitecture& arch,
                       const QrnnParameters& params, const TimeSeries& series,
                       int window) {
  const std::vector<double> preds = closed_loop_predictions(arch, params, series);
  if (window < 1 || size_t(window) > preds.size())
    throw std::invalid_argument("test_window_mse: bad window");
  const std::vector<double> truth(
      series.values.begin() + series.train_len,
      series.values.begin() + series.train_len + window);
  return mse({preds.begin(), preds.begin() + window}, truth);
}

std::vector<double> full_output_series(const QrnnArchitecture& arch,
                                       const QrnnParameters& params,
                                       const TimeSeries& series) {
  std::vector<double> out =
      run_teacher_forced(arch, params, series.train_slice());
  const std::vector<double> preds =
      closed_loop_predictions(arch, params, series);
  // Train rows carry the step-t output (the one-ahead estimate); test rows
  // carry the closed-loop value aligned to their own index, starting with
  // preds[0] at index train_len.
  out.insert(out.end(), preds.begin(), preds.end());
  return out;
}

SeedOutcome train_seed(const ExperimentConfig& config, const TimeSeries& series,
                       int seed_index) {
  SeedOutcome outcome;
  outcome.seed_index = seed_index;
  try {
    const QrnnArchitecture arch = make_architecture(config, seed_index);
    const TrainResult res = train_qrnn(arch, series, config.train);
    outcome.params = res.final_params;
    outcome.iterations = res.iterations;
    outcome.converged = res.converged;
    outcome.test_mse =
        test_window_mse(arch, res.final_params, series, config.test_window);
    outcome.ok = true;
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

DemoResult run_demo(const ExperimentConfig& config) {
  config.validate();
  ensure_dir(config.output_dir);
  const TimeSeries series = generate_task_series(config);

  DemoResult result;
  for (int s = 0; s < config.n_seeds; ++s) {
    result.seeds.push_back(train_seed(config, series, s));
    const SeedOutcome& o = result.seeds.back();
    if (o.ok && (result.best_seed < 0 || o.test_mse < result.best_mse)) {
      result.best_seed = o.seed_index;
      result.best_mse = o.test_mse;
    }
  }

  std::vector<CsvRow> summary;
  for (const SeedOutcome& o : result.seeds)
    summary.push_back({std::int64_t(o.seed_index),
                       o.ok ? o.test_mse : std::nan(""),
                       std::int64_t(o.iterations),
                       std::string(o.ok ? "ok" : sanitize_status(o.error))});
  emit_csv({"seed", "mse", "iterations", "status"}, summary,
           join_path(config.output_dir, "summary.csv"));

  if (result.best_seed < 0) return result;  // every seed failed
  const SeedOutcome& best = result.seeds[result.best_seed];
  const QrnnArchitecture arch = make_architecture(config, result.best_seed);
  save_model(arch, best.params, join_path(config.output_dir, "model.txt"));

  const QrnnParameters initial =
      QrnnParameters::zeros(arch.n_qubits(), arch.depth);
  const std::vector<double> y_initial =
      full_output_series(arch, initial, series);
  const std::vector<double> y_trained =
      full_output_series(arch, best.params, series);

  std::vector<CsvRow> rows;
  for (size_t t = 0; t < series.values.size(); ++t)
    rows.push_back({std::int64_t(t), series.values[t], y_initial[t],
                    y_trained[t],
                    std::string(int(t) < series.train_len ? "train" : "test")});
  emit_csv({"t", "x_true", "y_initial", "y_trained", "phase"}, rows,
           join_path(config.output_dir, "result.csv"));

  std::vector<double> ts(series.values.size());
  for (size_t t = 0; t < ts.size(); ++t) ts[t] = double(t);
  PlotSeries truth{"target", ts, series.values, "#444444", false, false};
  PlotSeries init{"initial", ts, y_initial, "#2ca02c", false, true};
  PlotSeries trained{"trained", ts, y_trained, "#d62728", false, false};
  PlotOptions opt;
  opt.title = task_name(config.task) + " forecast, seed " +
              std::to_string(result.best_seed);
  opt.x_label = "t";
  opt.y_label = "x";
  opt.boundary_x = series.train_len - 0.5;
  emit_svg_plot({truth, init, trained}, opt,
                join_path(config.output_dir, "demo.svg"));
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::vector<SweepRow> run_tau_sweep(const ExperimentConfig& config) {
  config.validate();
  ensure_dir(config.output_dir);
  const TimeSeries series = generate_task_series(config);

  std::vector<SweepRow> rows;
  for (double tau : config.tau_grid) {
    ExperimentConfig cell = config;
    cell.tau = tau;
    for (int s = 0; s < config.n_seeds; ++s) {
      // Same master seed across tau: each seed index reuses one draw.
      const SeedOutcome o = train_seed(cell, series, s);
      SweepRow row;
      row.tau = tau;
      row.seed_index = s;
      row.mse = o.ok ? o.test_mse : std::nan("");
      row.status = o.ok ? "ok" : sanitize_status(o.error);
      rows.push_back(std::move(row));
    }
  }

  std::vector<CsvRow> csv_rows;
  for (const SweepRow& r : rows)
    csv_rows.push_back(
        {r.tau, std::int64_t(r.seed_index), r.mse, r.status});
  emit_csv({"tau", "seed", "mse", "status"}, csv_rows,
           join_path(config.output_dir, "sweep.csv"));

  // Scatter of per-seed points plus the median trend, log-y.
  const double floor = 1e-12;
  PlotSeries points{"per-seed MSE", {}, {}, "#1f77b4", true, false};
  PlotSeries med{"median", {}, {}, "#d62728", false, false};
  std::map<double, std::vector<double>> by_tau;
  for (const SweepRow& r : rows)
    if (r.status == "ok") {
      points.x.push_back(r.tau);
      points.y.push_back(std::max(r.mse, floor));
      by_tau[r.tau].push_back(r.mse);
    }
  for (const auto& [tau, values] : by_tau) {
    med.x.push_back(tau);
    med.y.push_back(std::max(median(values), floor));
  }
  if (!points.x.empty()) {
    PlotOptions opt;
    opt.title = "prediction error vs evolution time";
    opt.x_label = "tau";
    opt.y_label = "test MSE";
    opt.log_y = true;
    emit_svg_plot({points, med}, opt,
                  join_path(config.output_dir, "sweep.svg"));
  }
  return rows;
}

GradCheckReport run_grad_check(const ExperimentConfig& config) {
  ensure_dir(config.output_dir);

  ExperimentConfig small = config;
  small.n_a = 2;
  small.n_b = 1;
  small.depth = 2;
  small.tau = 0.2;
  const QrnnArchitecture arch = make_architecture(small, 0);

  const TimeSeries cosine = gen_cosine();
  const int steps = 5;  // gradient steps; inputs carry one extra sample
  const std::vector<double> inputs(cosine.values.begin(),
                                   cosine.values.begin() + steps + 1);
  const std::vector<double> targets(cosine.values.begin() + 1,
                                    cosine.values.begin() + steps + 1);

  QrnnParameters params = QrnnParameters::zeros(arch.n_qubits(), arch.depth);
  SplitMix64 rng(config.master_seed ^ 0xA5A5A5A5A5A5A5A5ull);
  for (double& a : params.angles) a = rng.next_symmetric();
  params.c_out = 1.0 + 0.25 * rng.next_symmetric();

  const GradientVector fwd =
      grad_forward_sensitivity(arch, params, inputs, targets);
  const ParameterShiftResult shift =
      grad_parameter_shift(arch, params, inputs, targets);
  const GradientVector rev =
      grad_reverse_accumulation(arch, params, inputs, targets);
  const GradientVector fd =
      grad_finite_difference(arch, params, inputs, targets, 1e-5);

  GradCheckReport report;
  report.forward_vs_shift = rel_discrepancy(fwd, shift.gradient);
  report.forward_vs_reverse = rel_discrepancy(fwd, rev);
  report.forward_vs_fd = rel_discrepancy(fwd, fd);
  report.shift_vs_fd = rel_discrepancy(shift.gradient, fd);

  QrnnArchitecture shallow = arch;
  shallow.depth = 1;
  QrnnParameters shallow_params =
      QrnnParameters::zeros(shallow.n_qubits(), 1);
  for (double& a : shallow_params.angles) a = rng.next_symmetric();
  const ParameterShiftResult d1 =
      grad_parameter_shift(shallow, shallow_params, inputs, targets);
  report.shift_evals_per_angle_d1 =
      d1.evaluation_count / shallow_params.n_angles();

  report.passed = report.forward_vs_shift < 1e-7 &&
                  report.forward_vs_reverse < 1e-7 &&
                  report.forward_vs_fd < 1e-4 && report.shift_vs_fd < 1e-4 &&
                  report.shift_evals_per_angle_d1 == 2 * steps;

  std::ofstream out(join_path(config.output_dir, "gradcheck.txt"));
  if (!out) throw std::runtime_error("cannot write gradcheck.txt");
  out << "instance: n_a=2 n_b=1 depth=2 steps=" << steps << "\n"
      << "max relative discrepancy, forward vs parameter-shift: "
      << format_double(report.forward_vs_shift) << "\n"
      << "max relative discrepancy, forward vs reverse: "
      << format_double(report.forward_vs_reverse) << "\n"
      << "max relative discrepancy, forward vs finite-diff (h=1e-5): "
      << format_double(report.forward_vs_fd) << "\n"
      << "max relative discrepancy, parameter-shift vs finite-diff: "
      << format_double(report.shift_vs_fd) << "\n"
      << "parameter-shift evaluations per angle at depth 1: "
      << report.shift_evals_per_angle_d1 << "\n"
      << "result: " << (report.passed ? "pass" : "FAIL") << "\n";
  return report;
}

void save_model(const QrnnArchitecture& arch, const QrnnParameters& params,
                const std::string& path) {
  if (params.n_qubits != arch.n_qubits() || params.depth != arch.depth)
    throw std::invalid_argument("save_model: shape mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << "n_a = " << arch.n_a << "\n"
      << "n_b = " << arch.n_b << "\n"
      << "depth = " << arch.depth << "\n"
      << "tau = " << format_double(arch.tau) << "\n"
      << "a = " << join_reals(arch.a) << "\n"
      << "j = " << join_reals(arch.j) << "\n"
      << "angles = " << join_reals(params.angles) << "\n"
      << "c_out = " << format_double(params.c_out) << "\n";
  if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("load_model: expected 'name = value': " + line);
    auto trim = [](std::string s) {
      const size_t b = s.find_first_not_of(" \t");
      const size_t e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  const auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error("load_model: missing key '" + key + "'");
    return it->second;
  };
  const auto reals = [](const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    return out;
  };

  ModelFile model;
  model.arch.n_a = std::stoi(need("n_a"));
  model.arch.n_b = std::stoi(need("n_b"));
  model.arch.depth = std::stoi(need("depth"));
  model.arch.tau = std::stod(need("tau"));
  model.arch.a = reals(need("a"));
  model.arch.j = reals(need("j"));
  model.arch.validate();
  model.params.n_qubits = model.arch.n_qubits();
  model.params.depth = model.arch.depth;
  model.params.angles = reals(need("angles"));
  model.params.c_out = std::stod(need("c_out"));
  if (int(model.params.angles.size()) != model.params.n_angles())
    throw std::runtime_error("load_model: wrong angle count");
  return model;
}

}  // namespace qrnn

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrnn/csv.hpp"
#include "qrnn/experiment.hpp"
#include "qrnn/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

qrnn::ExperimentConfig load_config(const GlobalArgs& args) {
  qrnn::ExperimentConfig config =
      args.config_path.empty() ? qrnn::default_config(qrnn::Task::kCosine)
                               : qrnn::parse_config_file(args.config_path);
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (args.seed_set) config.master_seed = args.seed;
  config.validate();
  return config;
}

std::string out_path(const qrnn::ExperimentConfig& config,
                     const std::string& name) {
  std::filesystem::create_directories(config.output_dir);
  return (std::filesystem::path(config.output_dir) / name).string();
}

int cmd_gen_data(const qrnn::ExperimentConfig& config) {
  const qrnn::TimeSeries series = qrnn::generate_task_series(config);
  std::vector<qrnn::CsvRow> rows;
  for (size_t t = 0; t < series.values.size(); ++t)
    rows.push_back({std::int64_t(t), series.values[t],
                    std::string(int(t) < series.train_len ? "train" : "test")});
  qrnn::emit_csv({"t", "x", "phase"}, rows, out_path(config, "data.csv"));
  std::printf("wrote %zu samples (%d train) to %s\n", series.values.size(),
              series.train_len, out_path(config, "data.csv").c_str());
  return kExitOk;
}

int cmd_train(const qrnn::ExperimentConfig& config) {
  const qrnn::TimeSeries series = qrnn::generate_task_series(config);
  std::vector<qrnn::CsvRow> summary;
  int best = -1;
  double best_mse = 0.0;
  qrnn::QrnnParameters best_params;
  for (int s = 0; s < config.n_seeds; ++s) {
    const qrnn::SeedOutcome o = qrnn::train_seed(config, series, s);
    summary.push_back({std::int64_t(s), o.ok ? o.test_mse : std::nan(""),
                       std::int64_t(o.iterations),
                       std::string(o.ok ? "ok" : "failed")});
    if (o.ok) {
      std::printf("seed %d: mse %.6g after %d iterations\n", s, o.test_mse,
                  o.iterations);
      if (best < 0 || o.test_mse < best_mse) {
        best = s;
        best_mse = o.test_mse;
        best_params = o.params;
      }
    } else {
      std::printf("seed %d: failed (%s)\n", s, o.error.c_str());
    }
  }
  qrnn::emit_csv({"seed", "mse", "iterations", "status"}, summary,
                 out_path(config, "summary.csv"));
  if (best < 0) {
    std::fprintf(stderr, "every seed failed\n");
    return kExitCheckFailed;
  }
  qrnn::save_model(qrnn::make_architecture(config, best), best_params,
                   out_path(config, "model.txt"));
  std::printf("best seed %d, test mse %.6g; model saved to %s\n", best,
              best_mse, out_path(config, "model.txt").c_str());
  return kExitOk;
}

int cmd_predict(const qrnn::ExperimentConfig& config,
                const std::string& model_path) {
  const qrnn::ModelFile model = qrnn::load_model(model_path);
  const qrnn::TimeSeries series = qrnn::generate_task_series(config);
  const qrnn::QrnnParameters initial = qrnn::QrnnParameters::zeros(
      model.arch.n_qubits(), model.arch.depth);
  const std::vector<double> y_initial =
      qrnn::full_output_series(model.arch, initial, series);
  const std::vector<double> y_trained =
      qrnn::full_output_series(model.arch, model.params, series);
  std::vector<qrnn::CsvRow> rows;
  for (size_t t = 0; t < series.values.size(); ++t)
    rows.push_back({std::int64_t(t), series.values[t], y_initial[t],
                    y_trained[t],
                    std::string(int(t) < series.train_len ? "train" : "test")});
  qrnn::emit_csv({"t", "x_true", "y_initial", "y_trained", "phase"}, rows,
                 out_path(config, "result.csv"));
  const double mse = qrnn::test_window_mse(model.arch, model.params, series,
                                           config.test_window);
  std::printf("test mse over first %d predictions: %.6g\n", config.test_window,
              mse);
  return kExitOk;
}

int cmd_demo(const qrnn::ExperimentConfig& config) {
  const qrnn::DemoResult result = qrnn::run_demo(config);
  for (const qrnn::SeedOutcome& o : result.seeds) {
    if (o.ok)
      std::printf("seed %d: mse %.6g after %d iterations\n", o.seed_index,
                  o.test_mse, o.iterations);
    else
      std::printf("seed %d: failed (%s)\n", o.seed_index, o.error.c_str());
  }
  if (result.best_seed < 0) {
    std::fprintf(stderr, "every seed failed\n");
    return kExitCheckFailed;
  }
  std::printf("best seed %d, test mse %.6g; artifacts in %s\n",
              result.best_seed, result.best_mse, config.output_dir.c_str());
  return kExitOk;
}

int cmd_tau_sweep(const qrnn::ExperimentConfig& config) {
  const std::vector<qrnn::SweepRow> rows = qrnn::run_tau_sweep(config);
  int failures = 0;
  for (const qrnn::SweepRow& r : rows)
    if (r.status != "ok") ++failures;
  std::printf("sweep finished: %zu cells, %d failures; results in %s\n",
              rows.size(), failures, config.output_dir.c_str());
  return kExitOk;
}

int cmd_grad_check(const qrnn::ExperimentConfig& config) {
  const qrnn::GradCheckReport report = qrnn::run_grad_check(config);
  std::printf("forward vs parameter-shift: %.3g\n", report.forward_vs_shift);
  std::printf("forward vs reverse:         %.3g\n", report.forward_vs_reverse);
  std::printf("forward vs finite-diff:     %.3g\n", report.forward_vs_fd);
  std::printf("shift vs finite-diff:       %.3g\n", report.shift_vs_fd);
  std::printf("shift evaluations per angle at depth 1: %lld\n",
              report.shift_evals_per_angle_d1);
  std::printf("%s\n", report.passed ? "pass" : "FAIL");
  return report.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum recurrent network simulator and training harness"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs args;
  app.add_option("--config", args.config_path, "configuration file path");
  app.add_option("--out", args.out_dir, "output directory override");
  app.add_option("--seed", args.seed, "master seed override")
      ->each([&](const std::string&) { args.seed_set = true; });

  CLI::App* gen = app.add_subcommand("gen-data", "emit the target series");
  CLI::App* train = app.add_subcommand("train", "train across seeds");
  std::string model_path = "model.txt";
  CLI::App* predict =
      app.add_subcommand("predict", "run a saved model closed-loop");
  predict->add_option("--model", model_path, "saved model file");
  CLI::App* demo =
      app.add_subcommand("demo", "train, select the best seed and plot");
  CLI::App* sweep =
      app.add_subcommand("tau-sweep", "error vs evolution time sweep");
  CLI::App* check =
      app.add_subcommand("grad-check", "cross-validate gradient evaluators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    const qrnn::ExperimentConfig config = load_config(args);
    if (gen->parsed()) return cmd_gen_data(config);
    if (train->parsed()) return cmd_train(config);
    if (predict->parsed()) return cmd_predict(config, model_path);
    if (demo->parsed()) return cmd_demo(config);
    if (sweep->parsed()) return cmd_tau_sweep(config);
    if (check->parsed()) return cmd_grad_check(config);
    std::fprintf(stderr, "no subcommand\n");
    return kExitUsage;
  } catch (const qrnn::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
}

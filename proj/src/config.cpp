#include "qrnn/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace qrnn {

std::string task_name(Task task) {
  switch (task) {
    case Task::kCosine: return "cosine";
    case Task::kTriangle: return "triangle";
    case Task::kSpin: return "spin";
  }
  throw std::logic_error("task_name: bad enum");
}

Task task_from_name(const std::string& name) {
  if (name == "cosine") return Task::kCosine;
  if (name == "triangle") return Task::kTriangle;
  if (name == "spin") return Task::kSpin;
  throw ConfigError("unknown task '" + name +
                    "' (expected cosine, triangle or spin)");
}

void ExperimentConfig::validate() const {
  if (n_a < 1 || n_b < 1 || depth < 1)
    throw ConfigError("n_a, n_b and depth must be >= 1");
  if (tau < 0) throw ConfigError("tau must be >= 0");
  if (n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  if (test_window < 1) throw ConfigError("test_window must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must be nonempty");
  if (tau_grid.empty()) throw ConfigError("tau_grid must be nonempty");
  for (double t : tau_grid)
    if (t < 0) throw ConfigError("tau_grid values must be >= 0");
  if (lindblad_substeps < 1)
    throw ConfigError("lindblad_substeps must be >= 1");
  try {
    train.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig default_config(Task task) {
  ExperimentConfig c;
  c.task = task;
  c.tau = task == Task::kSpin ? 0.18 : 0.2;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad real for key '" + key + "': " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for key '" + key + "': " + value);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size() || value.front() == '-')
      throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned integer for key '" + key +
                      "': " + value);
  }
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& value) {
  std::vector<double> out;
  std::istringstream is(value);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in list '" + key + "'");
    out.push_back(parse_real(key, item));
  }
  if (out.empty()) throw ConfigError("empty list for key '" + key + "'");
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    entries.emplace_back(key, value);
  }

  // Apply `task` first so its tau default can still be overridden.
  ExperimentConfig config;
  bool task_seen = false;
  for (const auto& [key, value] : entries)
    if (key == "task") {
      if (task_seen) throw ConfigError("duplicate key 'task'");
      config = default_config(task_from_name(value));
      task_seen = true;
    }

  std::map<std::string, int> seen;
  for (const auto& [key, value] : entries) {
    if (++seen[key] > 1) throw ConfigError("duplicate key '" + key + "'");
    if (key == "task") {
    } else if (key == "n_a") {
      config.n_a = int(parse_int(key, value));
    } else if (key == "n_b") {
      config.n_b = int(parse_int(key, value));
    } else if (key == "depth") {
      config.depth = int(parse_int(key, value));
    } else if (key == "tau") {
      config.tau = parse_real(key, value);
    } else if (key == "n_seeds") {
      config.n_seeds = int(parse_int(key, value));
    } else if (key == "master_seed") {
      config.master_seed = parse_u64(key, value);
    } else if (key == "test_window") {
      config.test_window = int(parse_int(key, value));
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "max_iterations") {
      config.train.max_iterations = int(parse_int(key, value));
    } else if (key == "grad_norm_tol") {
      config.train.grad_norm_tol = parse_real(key, value);
    } else if (key == "wolfe_c1") {
      config.train.wolfe_c1 = parse_real(key, value);
    } else if (key == "wolfe_c2") {
      config.train.wolfe_c2 = parse_real(key, value);
    } else if (key == "max_line_search_steps") {
      config.train.max_line_search_steps = int(parse_int(key, value));
    } else if (key == "tau_grid") {
      config.tau_grid = parse_real_list(key, value);
    } else if (key == "lindblad_substeps") {
      config.lindblad_substeps = int(parse_int(key, value));
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace qrnn

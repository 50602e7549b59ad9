#include "splace/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

std::string to_string(PlacementMethod m) {
  switch (m) {
    case PlacementMethod::clique: return "clique";
    case PlacementMethod::greedy: return "greedy";
    case PlacementMethod::random: return "random";
  }
  return "unknown";
}

std::string to_string(ReconstructionMethod m) {
  return m == ReconstructionMethod::pinv ? "pinv" : "lasso";
}

PlacementMethod parse_method(const std::string& name) {
  if (name == "clique") return PlacementMethod::clique;
  if (name == "greedy") return PlacementMethod::greedy;
  if (name == "random") return PlacementMethod::random;
  throw ConfigError("unknown method '" + name + "' (expected clique|greedy|random)");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

double parse_f64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double value = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ConfigError("config: method list is empty");
  if (q_list.empty()) throw ConfigError("config: q list is empty");
  if (candidates < 2) throw ConfigError("config: candidates must be at least 2");
  for (std::size_t q : q_list) {
    if (q < 1 || q > candidates) {
      std::ostringstream msg;
      msg << "config: q=" << q << " outside [1, candidates=" << candidates << "]";
      throw ConfigError(msg.str());
    }
  }
  if (!(lambda1 > 0.0) || !(lambda1 < lambda2)) {
    throw ConfigError("config: need 0 < lambda1 < lambda2");
  }
  if (sweeps < 1 || replicas < 1 || calibration_sweeps < 1 || calibration_replicas < 1) {
    throw ConfigError("config: sweeps and replicas must be positive");
  }
  if (trials < 1) throw ConfigError("config: trials must be positive");
  if (filter_radius < 0) throw ConfigError("config: radius must be nonnegative");
  if (cv_folds < 2) throw ConfigError("config: folds must be at least 2");
  if (lambda_grid.count < 1 || !(lambda_grid.min_ratio > 0.0) ||
      lambda_grid.min_ratio > 1.0) {
    throw ConfigError("config: bad lambda grid spec");
  }
  if (use_synthetic()) {
    if (synthetic.grid.n_v < 2 || synthetic.grid.n_h < 2 || synthetic.snapshots < 2 ||
        synthetic.modes < 1) {
      throw ConfigError("config: bad synthetic spec");
    }
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config line " << line_no << ": expected key = value";
      throw ConfigError(msg.str());
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("config key '" + key + "' has no value");
    }

    if (key == "data") {
      cfg.data_path = value;
    } else if (key == "nv") {
      cfg.synthetic.grid.n_v = static_cast<std::uint32_t>(parse_u64(key, value));
    } else if (key == "nh") {
      cfg.synthetic.grid.n_h = static_cast<std::uint32_t>(parse_u64(key, value));
    } else if (key == "snapshots") {
      cfg.synthetic.snapshots = parse_u64(key, value);
    } else if (key == "modes") {
      cfg.synthetic.modes = parse_u64(key, value);
    } else if (key == "speed") {
      cfg.synthetic.speed = parse_f64(key, value);
    } else if (key == "wavelength") {
      cfg.synthetic.wavelength = parse_f64(key, value);
    } else if (key == "amplitude") {
      cfg.synthetic.amplitude = parse_f64(key, value);
    } else if (key == "noise") {
      cfg.synthetic.noise_sigma = parse_f64(key, value);
    } else if (key == "center") {
      cfg.center = parse_bool(key, value);
    } else if (key == "rank") {
      cfg.rank = value == "auto" ? 0 : static_cast<std::int64_t>(parse_u64(key, value));
    } else if (key == "candidates" || key == "k") {
      cfg.candidates = parse_u64(key, value);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& name : split_list(value)) cfg.methods.push_back(parse_method(name));
    } else if (key == "q") {
      cfg.q_list.clear();
      for (const auto& tok : split_list(value)) cfg.q_list.push_back(parse_u64(key, tok));
    } else if (key == "lambda1") {
      cfg.lambda1 = parse_f64(key, value);
    } else if (key == "lambda2") {
      cfg.lambda2 = parse_f64(key, value);
    } else if (key == "sweeps") {
      cfg.sweeps = parse_u64(key, value);
    } else if (key == "replicas") {
      cfg.replicas = parse_u64(key, value);
    } else if (key == "temp_start") {
      cfg.temp_start = parse_f64(key, value);
    } else if (key == "temp_end") {
      cfg.temp_end = parse_f64(key, value);
    } else if (key == "calibration_sweeps") {
      cfg.calibration_sweeps = parse_u64(key, value);
    } else if (key == "calibration_replicas") {
      cfg.calibration_replicas = parse_u64(key, value);
    } else if (key == "trials") {
      cfg.trials = parse_u64(key, value);
    } else if (key == "reconstruction") {
      if (value == "pinv") {
        cfg.reconstruction = ReconstructionMethod::pinv;
      } else if (value == "lasso") {
        cfg.reconstruction = ReconstructionMethod::lasso;
      } else {
        throw ConfigError("config: reconstruction must be pinv or lasso");
      }
    } else if (key == "radius") {
      cfg.filter_radius = static_cast<int>(parse_u64(key, value));
    } else if (key == "folds") {
      cfg.cv_folds = static_cast<int>(parse_u64(key, value));
    } else if (key == "lambda_count") {
      cfg.lambda_grid.count = parse_u64(key, value);
    } else if (key == "lambda_min_ratio") {
      cfg.lambda_grid.min_ratio = parse_f64(key, value);
    } else if (key == "probes") {
      if (value != "auto") {
        cfg.probes.clear();
        for (const auto& tok : split_list(value)) {
          cfg.probes.push_back(static_cast<std::uint32_t>(parse_u64(key, tok)));
        }
      }
    } else if (key == "window_start") {
      cfg.window_start = parse_u64(key, value);
    } else if (key == "window_length") {
      cfg.window_length = parse_u64(key, value);
    } else if (key == "efficiency_report") {
      cfg.efficiency_report = parse_bool(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(key, value);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace splace

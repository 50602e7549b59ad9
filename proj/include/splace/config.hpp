#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splace/anneal.hpp"
#include "splace/lasso.hpp"
#include "splace/placement.hpp"
#include "splace/synthetic.hpp"

namespace splace {

enum class ReconstructionMethod { pinv, lasso };

std::string to_string(ReconstructionMethod m);

/// Everything a full experiment run needs; parsed from a flat key=value
/// file. Unknown keys are rejected so typos cannot silently fall back to
/// defaults.
struct ExperimentConfig {
  // data source: a matrix file, or the synthetic generator when empty
  std::string data_path;
  SyntheticSpec synthetic;
  bool center = false;

  std::int64_t rank = 0;  // 0 = estimate by the optimal hard threshold

  std::size_t candidates = 2000;
  std::vector<PlacementMethod> methods = {
      PlacementMethod::clique, PlacementMethod::greedy, PlacementMethod::random};
  std::vector<std::size_t> q_list = {30, 60, 96, 128, 215, 276};

  double lambda1 = 1.0;
  double lambda2 = 2.0;
  std::size_t sweeps = 10000;
  std::size_t replicas = 8;
  double temp_start = 0.0;  // 0 = derive from lambda2
  double temp_end = 0.0;    // 0 = derive from lambda1
  // lighter schedule for the threshold-calibration probes
  std::size_t calibration_sweeps = 1000;
  std::size_t calibration_replicas = 2;

  std::size_t trials = 32;  // random-baseline repetitions

  ReconstructionMethod reconstruction = ReconstructionMethod::pinv;
  int filter_radius = 1;
  int cv_folds = 10;
  LambdaGridSpec lambda_grid;

  std::vector<std::uint32_t> probes;  // empty = pick 4 spread points
  std::size_t window_start = 0;
  std::size_t window_length = 0;  // 0 = all snapshots

  bool efficiency_report = false;

  std::string out_dir = "out";
  std::uint64_t master_seed = 0;

  bool use_synthetic() const { return data_path.empty(); }

  /// Range and consistency checks shared by file parsing and CLI assembly.
  void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

PlacementMethod parse_method(const std::string& name);

}  // namespace splace

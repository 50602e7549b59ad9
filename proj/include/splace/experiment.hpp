#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "splace/baselines.hpp"
#include "splace/config.hpp"

namespace splace {

/// One placement evaluated on the data window: who selected it, what it
/// cost, and how well it reconstructs. A failed stage leaves `error`
/// nonempty and the metrics unset; other records are unaffected.
struct MethodRecord {
  std::string method;
  std::size_t q_requested = 0;
  std::size_t q = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> indices;

  double threshold_c = 0.0;   // clique: calibrated weight threshold
  double energy = 0.0;        // clique: final Hamiltonian value
  bool penalty_free = false;  // clique: energy == -lambda1 * q

  double e_reconst = 0.0;
  std::vector<double> rmse_by_probe;
  double rmse_mean = 0.0;  // mean over probes
  double wall_ms = 0.0;
  std::string error;
};

/// Per (method, q) statistics over trials (single trial for the
/// deterministic methods, `trials` for random).
struct MethodSummary {
  std::string method;
  std::size_t q = 0;
  TrialStatistics rmse;
  TrialStatistics e_reconst;
};

/// Smallest q at which the clique placement already matches the greedy
/// placement using four times the sensors. Reported, never asserted: the
/// crossover is a property of the dataset.
struct EfficiencyReport {
  bool computed = false;
  std::size_t q_star = 0;
  std::size_t greedy_q = 0;
  double clique_rmse = 0.0;
  double greedy_rmse = 0.0;
  double sensor_ratio = 0.0;  // q_star / greedy_q
};

struct ResultBundle {
  int format_version = 1;
  ExperimentConfig config;
  std::size_t data_rows = 0;
  std::size_t data_cols = 0;
  std::int64_t rank_used = 0;
  std::int64_t rank_estimate = 0;
  std::vector<std::uint32_t> probes;
  std::vector<MethodRecord> records;
  std::vector<MethodSummary> summaries;
  EfficiencyReport efficiency;
};

/// Runs the full protocol: decompose, place per method and q (random over
/// `trials` seeds; greedy and random matched to the clique's achieved size
/// when the clique method runs), reconstruct over the configured window,
/// and collect statistics. Deterministic given config and master seed.
ResultBundle run_placement_experiment(const ExperimentConfig& config);

/// Canonical JSON form of a bundle; with_wall=false zeroes wall-clock
/// fields so two runs can be compared for determinism.
nlohmann::ordered_json bundle_to_json(const ResultBundle& bundle, bool with_wall = true);

/// Writes results.json plus flat CSV tables (records.csv: one row per
/// method x q x trial; summary.csv: method, q, rmse_mean, rmse_std, ...)
/// into `dir`. Re-emitting the same bundle is byte-identical.
void emit_results(const ResultBundle& bundle, const std::string& dir);

}  // namespace splace

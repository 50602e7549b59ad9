// Acceptance suite: one binary, one pass/fail line per criterion.
//
//   acceptance            runs every criterion
//   acceptance --only N   runs criterion N
//
// Criteria 2, 4 and 5 share one benchmark experiment; its bundle is cached
// under ./acceptance_cache so the separate ctest entries do not recompute it.

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "splace/anneal.hpp"
#include "splace/experiment.hpp"
#include "splace/lasso.hpp"
#include "splace/matrix_io.hpp"
#include "splace/qubo.hpp"
#include "splace/reconstruction.hpp"
#include "splace/rng.hpp"
#include "splace/synthetic.hpp"
#include "test_support.hpp"

using namespace splace;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// shared benchmark experiment (criteria 2, 4, 5)

ExperimentConfig benchmark_config() {
  ExperimentConfig cfg;
  cfg.synthetic.grid = {128, 128};
  cfg.synthetic.snapshots = 512;
  cfg.synthetic.modes = 8;
  cfg.synthetic.speed = 1.0;
  cfg.synthetic.wavelength = 32.0;
  cfg.synthetic.amplitude = 1.0;
  cfg.synthetic.noise_sigma = 0.01;
  cfg.synthetic.seed = 2024;
  cfg.rank = 16;
  cfg.candidates = 2000;
  cfg.q_list = {32, 64, 128};
  cfg.trials = 32;
  cfg.reconstruction = ReconstructionMethod::lasso;
  cfg.filter_radius = 1;
  cfg.cv_folds = 10;
  cfg.lambda_grid = {30, 1e-3};
  cfg.window_start = 0;
  cfg.window_length = 128;
  cfg.sweeps = 10000;
  cfg.replicas = 8;
  cfg.calibration_sweeps = 500;
  cfg.calibration_replicas = 2;
  cfg.efficiency_report = true;
  cfg.master_seed = 99;
  return cfg;
}

struct BenchmarkResult {
  ResultBundle bundle;
  double wall_s = 0.0;
};

ResultBundle bundle_from_json(const nlohmann::json& j) {
  ResultBundle b;
  for (const auto& jr : j.at("records")) {
    MethodRecord r;
    r.method = jr.at("method").get<std::string>();
    r.q_requested = jr.at("q_requested").get<std::size_t>();
    r.q = jr.at("q").get<std::size_t>();
    r.trial = jr.at("trial").get<std::size_t>();
    r.seed = jr.at("seed").get<std::uint64_t>();
    r.indices = jr.at("indices").get<std::vector<std::uint32_t>>();
    r.threshold_c = jr.at("c").get<double>();
    r.energy = jr.at("energy").get<double>();
    r.penalty_free = jr.at("penalty_free").get<bool>();
    r.e_reconst = jr.at("e_reconst").get<double>();
    r.rmse_by_probe = jr.at("rmse_by_probe").get<std::vector<double>>();
    r.rmse_mean = jr.at("rmse_mean").get<double>();
    r.error = jr.at("error").get<std::string>();
    b.records.push_back(std::move(r));
  }
  for (const auto& js : j.at("summaries")) {
    MethodSummary s;
    s.method = js.at("method").get<std::string>();
    s.q = js.at("q").get<std::size_t>();
    s.rmse.trials = js.at("trials").get<std::size_t>();
    s.rmse.mean = js.at("rmse_mean").get<double>();
    s.rmse.std_dev = js.at("rmse_std").get<double>();
    s.rmse.per_trial = js.at("rmse_per_trial").get<std::vector<double>>();
    s.e_reconst.mean = js.at("e_reconst_mean").get<double>();
    s.e_reconst.std_dev = js.at("e_reconst_std").get<double>();
    b.summaries.push_back(std::move(s));
  }
  const auto& je = j.at("efficiency");
  b.efficiency.computed = je.at("computed").get<bool>();
  b.efficiency.q_star = je.at("q_star").get<std::size_t>();
  b.efficiency.greedy_q = je.at("greedy_q").get<std::size_t>();
  b.efficiency.clique_rmse = je.at("clique_rmse").get<double>();
  b.efficiency.greedy_rmse = je.at("greedy_rmse").get<double>();
  b.efficiency.sensor_ratio = je.at("sensor_ratio").get<double>();
  return b;
}

const BenchmarkResult& benchmark_result() {
  static std::optional<BenchmarkResult> cached;
  if (cached) return *cached;

  const ExperimentConfig cfg = benchmark_config();
  const nlohmann::json want_config =
      nlohmann::json(bundle_to_json(ResultBundle{1, cfg}, false).at("config"));
  const std::string cache_path = "acceptance_cache/benchmark.json";

  if (std::filesystem::exists(cache_path)) {
    std::ifstream in(cache_path);
    nlohmann::json j;
    in >> j;
    if (j.value("config", nlohmann::json{}) == want_config) {
      BenchmarkResult loaded{bundle_from_json(j.at("bundle")),
                             j.at("wall_s").get<double>()};
      loaded.bundle.config = cfg;
      cached = std::move(loaded);
      return *cached;
    }
  }

  const auto t0 = Clock::now();
  ResultBundle bundle = run_placement_experiment(cfg);
  const double wall = seconds_since(t0);

  std::filesystem::create_directories("acceptance_cache");
  nlohmann::ordered_json j;
  j["config"] = want_config;
  j["wall_s"] = wall;
  j["bundle"] = bundle_to_json(bundle);
  const std::string tmp = cache_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, cache_path);

  cached = BenchmarkResult{std::move(bundle), wall};
  return *cached;
}

const MethodRecord* find_record(const ResultBundle& b, const std::string& method,
                                std::size_t q) {
  for (const MethodRecord& r : b.records) {
    if (r.method == method && r.q == q && r.error.empty()) return &r;
  }
  return nullptr;
}

const MethodSummary* find_summary(const ResultBundle& b, const std::string& method,
                                  std::size_t q) {
  for (const MethodSummary& s : b.summaries) {
    if (s.method == method && s.q == q) return &s;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// criteria

bool criterion_1(std::ostream& log) {
  const auto t0 = Clock::now();
  int optimal = 0;
  int feasible = 0;
  const int instances = 200;
  for (int i = 0; i < instances; ++i) {
    const std::size_t k = 10 + static_cast<std::size_t>(i) % 11;  // 10..20
    std::ostringstream tag;
    tag << "c1/instance=" << i;
    const ThresholdGraph comp =
        test::random_complement_graph(k, 0.3, derive_seed(4242, tag.str()));
    const QuboProblem qubo = build_qubo(comp, 1.0, 2.0);

    const SolveResult exact = exhaustive_solve(qubo);
    const SolveResult sa = anneal(qubo, default_schedule(qubo, 9000 + static_cast<std::uint64_t>(i)));
    const BitAssignment repaired = repair_to_independent_set(comp, sa.bits);

    bool valid = true;
    for (std::size_t a = 0; a < k && valid; ++a) {
      for (std::size_t b = a + 1; b < k && valid; ++b) {
        if (comp.has_edge(a, b) && repaired.bits[a] && repaired.bits[b]) valid = false;
      }
    }
    if (valid) ++feasible;
    if (energy(qubo, repaired) == exact.energy) ++optimal;
  }
  const double wall = seconds_since(t0);
  log << optimal << "/" << instances << " optimal, " << feasible << "/"
      << instances << " feasible, " << wall << " s";
  return optimal >= 190 && feasible == instances && wall < 30.0;
}

bool criterion_2(std::ostream& log) {
  // small dedicated run plus every clique record of the shared benchmark
  ExperimentConfig small;
  small.synthetic.grid = {24, 32};
  small.synthetic.snapshots = 48;
  small.synthetic.modes = 3;
  small.synthetic.noise_sigma = 0.0;
  small.synthetic.seed = 5;
  small.rank = 6;
  small.candidates = 128;
  small.q_list = {8, 16};
  small.methods = {PlacementMethod::clique};
  small.sweeps = 2000;
  small.replicas = 4;
  small.calibration_sweeps = 200;
  small.calibration_replicas = 2;
  small.master_seed = 31;

  std::size_t checked = 0;
  bool ok = true;
  const auto check_bundle = [&](const ResultBundle& bundle) {
    for (const MethodRecord& rec : bundle.records) {
      if (rec.method != "clique") continue;
      ++checked;
      if (!rec.error.empty() || !rec.penalty_free ||
          rec.energy != -static_cast<double>(rec.q)) {
        ok = false;
      }
    }
  };
  check_bundle(run_placement_experiment(small));
  check_bundle(benchmark_result().bundle);
  log << checked << " clique records, all energies exactly -q: "
      << (ok ? "yes" : "NO");
  return ok && checked >= 5;
}

bool criterion_3(std::ostream& log) {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.synthetic.grid = {64, 64};  // n = 4096
  cfg.synthetic.snapshots = 200;
  cfg.synthetic.modes = 5;  // exact rank 10
  cfg.synthetic.noise_sigma = 0.0;
  cfg.synthetic.seed = 7;
  cfg.rank = 10;
  cfg.candidates = 2000;
  cfg.q_list = {20};
  cfg.trials = 32;
  cfg.reconstruction = ReconstructionMethod::pinv;
  cfg.sweeps = 3000;
  cfg.replicas = 4;
  cfg.calibration_sweeps = 300;
  cfg.calibration_replicas = 2;
  cfg.master_seed = 55;

  const ResultBundle bundle = run_placement_experiment(cfg);
  const double wall = seconds_since(t0);

  bool clique_ok = false, greedy_ok = false;
  int random_ok = 0, random_total = 0;
  for (const MethodRecord& rec : bundle.records) {
    if (!rec.error.empty()) continue;
    if (rec.method == "clique") clique_ok = rec.e_reconst <= 1e-8;
    if (rec.method == "greedy") greedy_ok = rec.e_reconst <= 1e-8;
    if (rec.method == "random") {
      ++random_total;
      if (rec.e_reconst <= 1e-8) ++random_ok;
    }
  }
  log << "clique " << (clique_ok ? "ok" : "FAIL") << ", greedy "
      << (greedy_ok ? "ok" : "FAIL") << ", random " << random_ok << "/"
      << random_total << ", " << wall << " s";
  return clique_ok && greedy_ok && random_ok >= 30 && random_total == 32 &&
         wall < 60.0;
}

bool criterion_4(std::ostream& log) {
  const BenchmarkResult& bench = benchmark_result();
  const ResultBundle& bundle = bench.bundle;

  bool ok = true;
  for (std::size_t q_requested : {32u, 64u, 128u}) {
    const MethodRecord* clique = nullptr;
    for (const MethodRecord& r : bundle.records) {
      if (r.method == "clique" && r.q_requested == q_requested && r.error.empty()) {
        clique = &r;
      }
    }
    if (!clique) {
      log << "missing clique record at q=" << q_requested << "; ";
      ok = false;
      continue;
    }
    const MethodSummary* random = find_summary(bundle, "random", clique->q);
    if (!random) {
      log << "missing random summary at q=" << clique->q << "; ";
      ok = false;
      continue;
    }
    const bool beats_random = clique->rmse_mean < random->rmse.mean;
    log << "q=" << clique->q << ": clique " << clique->rmse_mean << " vs random "
        << random->rmse.mean << (beats_random ? " ok" : " FAIL") << "; ";
    if (!beats_random) ok = false;

    if (q_requested == 128) {
      const MethodRecord* greedy = find_record(bundle, "greedy", clique->q);
      if (!greedy) {
        log << "missing greedy at q=" << clique->q << "; ";
        ok = false;
      } else {
        const bool close = clique->rmse_mean <= greedy->rmse_mean * 1.05;
        log << "greedy " << greedy->rmse_mean << (close ? " ok" : " FAIL") << "; ";
        if (!close) ok = false;
      }
    }
  }
  log << "benchmark wall " << bench.wall_s << " s";
  return ok && bench.wall_s < 600.0;
}

bool criterion_5(std::ostream& log) {
  const ResultBundle& bundle = benchmark_result().bundle;
  // the mechanism must have evaluated greedy at 4x every achieved clique q
  bool evaluations_present = true;
  for (const MethodRecord& rec : bundle.records) {
    if (rec.method != "clique" || !rec.error.empty()) continue;
    const std::size_t big_q = 4 * rec.q;
    if (big_q > bundle.config.candidates) continue;
    if (!find_record(bundle, "greedy", big_q)) evaluations_present = false;
  }
  if (bundle.efficiency.computed) {
    log << "clique q=" << bundle.efficiency.q_star << " (rmse "
        << bundle.efficiency.clique_rmse << ") <= greedy q="
        << bundle.efficiency.greedy_q << " (rmse " << bundle.efficiency.greedy_rmse
        << "), sensor ratio " << bundle.efficiency.sensor_ratio;
  } else {
    log << "no crossover found on this dataset (reported, not asserted)";
  }
  return evaluations_present;
}

bool criterion_6(std::ostream& log) {
  double worst_ortho = 0.0;
  // closed-form soft threshold on orthonormal designs
  for (Eigen::Index r : {2, 8, 16}) {
    const Eigen::Index q = r + 20;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(
        test::random_matrix(q, r, 600 + static_cast<std::uint64_t>(r)));
    const Eigen::MatrixXd theta =
        qr.householderQ() * Eigen::MatrixXd::Identity(q, r);
    PodBasis basis;
    basis.rank = r;
    basis.modes = theta;
    basis.singular_values = Eigen::VectorXd::Ones(r);
    basis.weighted_rows = theta;
    Placement placement;
    for (Eigen::Index i = 0; i < q; ++i) {
      placement.indices.push_back(static_cast<std::uint32_t>(i));
    }
    const MeasurementOperator op = make_operator(basis, placement);
    const Eigen::VectorXd phi =
        test::random_matrix(q, 1, 700 + static_cast<std::uint64_t>(r));
    const Eigen::VectorXd proj = theta.transpose() * phi;
    for (double frac : {0.5, 0.1, 0.01}) {
      const double lambda =
          frac * proj.cwiseAbs().maxCoeff() / static_cast<double>(q);
      const LassoResult fit = lasso_fit(op, phi, lambda);
      for (Eigen::Index i = 0; i < r; ++i) {
        const double t = static_cast<double>(q) * lambda;
        const double closed =
            proj[i] > t ? proj[i] - t : (proj[i] < -t ? proj[i] + t : 0.0);
        worst_ortho = std::max(worst_ortho, std::abs(fit.coefficients[i] - closed));
      }
    }
  }

  // lambda = 0 against the pseudo-inverse
  double worst_zero = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd theta = test::random_matrix(14, 5, 800 + seed);
    PodBasis basis;
    basis.rank = 5;
    basis.modes = theta;
    basis.singular_values = Eigen::VectorXd::Ones(5);
    basis.weighted_rows = theta;
    Placement placement;
    for (std::uint32_t i = 0; i < 14; ++i) placement.indices.push_back(i);
    const MeasurementOperator op = make_operator(basis, placement);
    const Eigen::VectorXd phi = test::random_matrix(14, 1, 900 + seed);
    const LassoResult fit = lasso_fit(op, phi, 0.0);
    worst_zero = std::max(worst_zero,
                          (fit.coefficients - pinv_coefficients(op, phi))
                              .cwiseAbs()
                              .maxCoeff());
  }

  // KKT residuals on random instances
  double worst_kkt = 0.0;
  Rng rng(1001);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index q = 6 + static_cast<Eigen::Index>(rng.next_index(20));
    const Eigen::Index r = 2 + static_cast<Eigen::Index>(rng.next_index(10));
    const Eigen::MatrixXd theta =
        test::random_matrix(q, r, 1100 + static_cast<std::uint64_t>(trial));
    PodBasis basis;
    basis.rank = r;
    basis.modes = theta;
    basis.singular_values = Eigen::VectorXd::Ones(r);
    basis.weighted_rows = theta;
    Placement placement;
    for (Eigen::Index i = 0; i < q; ++i) {
      placement.indices.push_back(static_cast<std::uint32_t>(i));
    }
    const MeasurementOperator op = make_operator(basis, placement);
    const Eigen::VectorXd phi =
        test::random_matrix(q, 1, 1200 + static_cast<std::uint64_t>(trial));
    const double lambda = 0.001 + 0.3 * rng.next_double();
    const LassoResult fit = lasso_fit(op, phi, lambda);
    worst_kkt = std::max(worst_kkt,
                         lasso_kkt_violation(theta, phi, lambda, fit.coefficients));
  }

  log << "soft-threshold dev " << worst_ortho << ", lambda0 dev " << worst_zero
      << ", KKT " << worst_kkt;
  return worst_ortho <= 1e-8 && worst_zero <= 1e-6 && worst_kkt <= 1e-6;
}

bool criterion_7(std::ostream& log) {
  double worst_resid = 0.0, worst_ortho = 0.0, worst_mp = 0.0;
  const std::pair<Eigen::Index, Eigen::Index> sizes[] = {
      {32, 8}, {128, 64}, {333, 77}, {512, 256}};
  for (const auto& [n, m] : sizes) {
    const Eigen::MatrixXd x = test::random_matrix(n, m, 1300 + static_cast<std::uint64_t>(n));
    const SvdFactorization svd = compute_svd(DataMatrix{x, {}});
    const Eigen::MatrixXd rebuilt =
        svd.u * svd.sigma.asDiagonal() * svd.v.transpose();
    worst_resid = std::max(worst_resid, (x - rebuilt).norm() / x.norm());
    const Eigen::MatrixXd iu = Eigen::MatrixXd::Identity(svd.u.cols(), svd.u.cols());
    worst_ortho = std::max(worst_ortho,
                           (svd.u.transpose() * svd.u - iu).cwiseAbs().maxCoeff());
    worst_ortho = std::max(worst_ortho,
                           (svd.v.transpose() * svd.v - iu).cwiseAbs().maxCoeff());

    const PodBasis basis = truncate(svd, std::min<Eigen::Index>(m, 24));
    Placement placement;
    for (std::uint32_t i = 0; i < 30; ++i) {
      placement.indices.push_back(i * static_cast<std::uint32_t>(n) / 30);
    }
    const MeasurementOperator op = make_operator(basis, placement);
    const Eigen::MatrixXd& a = op.theta;
    const Eigen::MatrixXd& pinv = op.theta_pinv;
    worst_mp = std::max(worst_mp, (a * pinv * a - a).cwiseAbs().maxCoeff());
    worst_mp = std::max(worst_mp, (pinv * a * pinv - pinv).cwiseAbs().maxCoeff());
    const Eigen::MatrixXd ap = a * pinv;
    const Eigen::MatrixXd pa = pinv * a;
    worst_mp = std::max(worst_mp, (ap - ap.transpose()).cwiseAbs().maxCoeff());
    worst_mp = std::max(worst_mp, (pa - pa.transpose()).cwiseAbs().maxCoeff());
  }
  log << "svd resid " << worst_resid << ", ortho " << worst_ortho
      << ", moore-penrose " << worst_mp;
  return worst_resid <= 1e-10 && worst_ortho <= 1e-10 && worst_mp <= 1e-10;
}

bool criterion_8(std::ostream& log) {
  bool ok = true;
  Rng rng(1401);
  double worst_scale = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd u = test::random_matrix(7, 1, 1500 + static_cast<std::uint64_t>(trial));
    const Eigen::VectorXd v = test::random_matrix(7, 1, 1600 + static_cast<std::uint64_t>(trial));
    const double w = pair_weight(u, v);
    if (w != pair_weight(v, u)) ok = false;                 // symmetric exactly
    if (w < 0.0 || w > u.norm() * v.norm() * (1.0 + 1e-12)) ok = false;
    // parallel vectors with exactly representable scalings
    if (pair_weight(u, u) != 0.0) ok = false;
    if (pair_weight(u, (-2.0) * u) != 0.0) ok = false;
    if (pair_weight(u, 0.25 * u) != 0.0) ok = false;
    // scale covariance
    const double alpha = 4.0 * rng.next_double() - 2.0;
    const double scaled = pair_weight(alpha * u, v);
    const double expected = std::abs(alpha) * w;
    const double denom = std::max(expected, 1e-30);
    worst_scale = std::max(worst_scale, std::abs(scaled - expected) / denom);
  }
  if (worst_scale > 1e-12) ok = false;

  // edge-set monotonicity and clique-size monotonicity vs the oracle
  PodBasis basis;
  basis.rank = 5;
  basis.modes = test::random_matrix(18, 5, 1700);
  basis.singular_values = Eigen::VectorXd::Ones(5);
  basis.weighted_rows = basis.modes;
  const WeightedGraph g = build_graph(basis, select_candidates(18, 18));
  const double w_max = g.max_weight();
  std::size_t previous_clique = 18;
  std::size_t previous_edges = g.order() * (g.order() - 1) / 2 + 1;
  ThresholdGraph previous = threshold_graph(g, 0.0);
  for (int step = 0; step <= 10; ++step) {
    const double c = w_max * step / 10.0;
    const ThresholdGraph tg = threshold_graph(g, c);
    if (tg.edge_count() > previous_edges) ok = false;
    for (std::size_t a = 0; a < 18; ++a) {
      for (std::size_t b = a + 1; b < 18; ++b) {
        if (tg.has_edge(a, b) && !previous.has_edge(a, b)) ok = false;
      }
    }
    const std::size_t clique = test::max_clique_size_oracle(tg);
    if (clique > previous_clique) ok = false;
    previous_clique = clique;
    previous_edges = tg.edge_count();
    previous = tg;
  }
  log << "scale covariance dev " << worst_scale << ", monotonicity "
      << (ok ? "ok" : "FAIL");
  return ok;
}

bool criterion_9(std::ostream& log) {
  // end-to-end experiment determinism
  ExperimentConfig cfg;
  cfg.synthetic.grid = {24, 32};
  cfg.synthetic.snapshots = 48;
  cfg.synthetic.modes = 3;
  cfg.synthetic.noise_sigma = 0.005;
  cfg.synthetic.seed = 5;
  cfg.rank = 6;
  cfg.candidates = 128;
  cfg.q_list = {8};
  cfg.trials = 8;
  cfg.sweeps = 800;
  cfg.replicas = 4;
  cfg.calibration_sweeps = 200;
  cfg.calibration_replicas = 2;
  cfg.reconstruction = ReconstructionMethod::lasso;
  cfg.lambda_grid = {15, 1e-3};
  cfg.cv_folds = 4;
  cfg.master_seed = 101;
  const bool bundles_equal =
      bundle_to_json(run_placement_experiment(cfg), false) ==
      bundle_to_json(run_placement_experiment(cfg), false);

  // matrix format round trip, bit for bit
  std::filesystem::create_directories("acceptance_cache");
  DataMatrix x{test::random_matrix(33, 9, 1801), GridShape{3, 11}};
  write_matrix(x, "acceptance_cache/roundtrip.spmx");
  const DataMatrix y = read_matrix("acceptance_cache/roundtrip.spmx");
  const bool roundtrip = (y.values == x.values) && y.grid == x.grid;

  // pinned-generator anneal trajectories
  const ThresholdGraph comp = test::random_complement_graph(64, 0.2, 1901);
  const QuboProblem qubo = build_qubo(comp);
  AnnealSchedule sched = default_schedule(qubo, 77);
  sched.sweeps = 500;
  const SolveResult a = anneal(qubo, sched);
  const SolveResult b = anneal(qubo, sched);
  const bool anneal_equal = a.bits.bits == b.bits.bits && a.energy == b.energy;

  log << "bundle " << (bundles_equal ? "ok" : "FAIL") << ", roundtrip "
      << (roundtrip ? "ok" : "FAIL") << ", anneal " << (anneal_equal ? "ok" : "FAIL");
  return bundles_equal && roundtrip && anneal_equal;
}

bool criterion_10(std::ostream& log) {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.synthetic.grid = {128, 128};
  cfg.synthetic.snapshots = 512;
  cfg.synthetic.modes = 16;
  cfg.synthetic.speed = 1.0;
  cfg.synthetic.wavelength = 48.0;
  cfg.synthetic.noise_sigma = 0.01;
  cfg.synthetic.seed = 31415;
  cfg.rank = 32;
  cfg.candidates = 2000;
  cfg.q_list = {32, 64, 128};
  cfg.trials = 32;
  cfg.reconstruction = ReconstructionMethod::lasso;
  cfg.lambda_grid = {30, 1e-3};
  cfg.window_length = 100;
  cfg.sweeps = 10000;
  cfg.replicas = 8;
  cfg.calibration_sweeps = 500;
  cfg.calibration_replicas = 2;
  cfg.master_seed = 123;

  const ResultBundle bundle = run_placement_experiment(cfg);
  const double wall = seconds_since(t0);
  std::size_t clean = 0;
  for (const MethodRecord& rec : bundle.records) {
    if (rec.error.empty()) ++clean;
  }
  log << clean << "/" << bundle.records.size() << " records clean, " << wall
      << " s";
  return clean == bundle.records.size() && wall < 900.0;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::ostream&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--help" || arg == "-h") {
      std::cout << "usage: acceptance [--only N]\n";
      return 0;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "annealer optimality on random instances", criterion_1},
      {2, "penalty-free clique solutions (energy = -q)", criterion_2},
      {3, "exact recovery on clean rank-10 data", criterion_3},
      {4, "clique beats random, matches greedy at q=128", criterion_4},
      {5, "sensor-efficiency report", criterion_5},
      {6, "lasso soft-threshold, lambda=0 and KKT checks", criterion_6},
      {7, "linear-algebra invariants", criterion_7},
      {8, "graph weight properties and monotonicity", criterion_8},
      {9, "determinism and format round trips", criterion_9},
      {10, "desk-scale pipeline budget", criterion_10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::ostringstream detail;
    bool pass = false;
    try {
      pass = c.run(detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, detail.str().c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

#include "splace/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "splace/anneal.hpp"
#include "splace/errors.hpp"
#include "splace/matrix_io.hpp"
#include "splace/qubo.hpp"
#include "splace/reconstruction.hpp"
#include "splace/rng.hpp"
#include "splace/synthetic.hpp"

namespace splace {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::uint32_t> auto_probes(const DataMatrix& data) {
  std::vector<std::uint32_t> probes;
  if (data.grid) {
    const std::uint32_t nv = data.grid->n_v;
    const std::uint32_t nh = data.grid->n_h;
    const std::uint32_t rows[2] = {nv / 2 - nv / 8, nv / 2 + nv / 8};
    const std::uint32_t cols[2] = {5 * nh / 8, 7 * nh / 8};
    for (std::uint32_t r : rows) {
      for (std::uint32_t c : cols) {
        probes.push_back(r * nh + c);
      }
    }
  } else {
    const auto n = static_cast<std::uint32_t>(data.rows());
    for (std::uint32_t i = 1; i <= 4; ++i) {
      probes.push_back(static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(n) * i / 5));
    }
  }
  return probes;
}

DataMatrix window_of(const DataMatrix& x, std::size_t start, std::size_t length) {
  DataMatrix w;
  w.grid = x.grid;
  w.values = x.values.middleCols(static_cast<Eigen::Index>(start),
                                 static_cast<Eigen::Index>(length));
  return w;
}

struct ExperimentContext {
  const ExperimentConfig& cfg;
  const PodBasis& basis;
  DataMatrix window_data;
  DataMatrix window_ref;
  bool has_reference = false;
  std::vector<std::uint32_t> probes;
};

void evaluate_placement(const ExperimentContext& ctx, const Placement& placement,
                        MethodRecord& rec) {
  ReconstructionReport report;
  const DataMatrix* ref = ctx.has_reference ? &ctx.window_ref : nullptr;
  if (ctx.cfg.reconstruction == ReconstructionMethod::pinv) {
    report = pinv_pipeline(ctx.basis, placement, ctx.window_data, ctx.probes, ref);
  } else {
    report = denoise_pipeline(ctx.basis, placement, ctx.window_data,
                              ctx.cfg.filter_radius, ctx.cfg.lambda_grid,
                              ctx.cfg.cv_folds, ctx.probes, ref);
  }
  rec.e_reconst = report.e_reconst;
  rec.rmse_by_probe = report.rmse_by_probe;
  double sum = 0.0;
  for (double v : report.rmse_by_probe) sum += v;
  rec.rmse_mean = report.rmse_by_probe.empty()
                      ? 0.0
                      : sum / static_cast<double>(report.rmse_by_probe.size());
}

struct CliqueOutcome {
  Placement placement;
  double c = 0.0;
  double energy = 0.0;
  bool penalty_free = false;
  std::uint64_t seed = 0;
};

CliqueOutcome solve_clique(const ExperimentConfig& cfg, const WeightedGraph& graph,
                           std::size_t q_target) {
  AnnealSchedule calib;
  calib.sweeps = cfg.calibration_sweeps;
  calib.replicas = cfg.calibration_replicas;
  calib.temp_start = cfg.temp_start > 0.0 ? cfg.temp_start : 2.0 * cfg.lambda2;
  calib.temp_end = cfg.temp_end > 0.0 ? cfg.temp_end : 0.01 * cfg.lambda1;

  std::size_t probe_no = 0;
  const CliqueSizeFn evaluator = [&](const ThresholdGraph& g_c) {
    const ThresholdGraph comp = complement(g_c);
    const QuboProblem qubo = build_qubo(comp, cfg.lambda1, cfg.lambda2);
    AnnealSchedule sched = calib;
    std::ostringstream tag;
    tag << "calibrate/q=" << q_target << "/probe=" << probe_no++;
    sched.seed = derive_seed(cfg.master_seed, tag.str());
    const SolveResult res = anneal(qubo, sched);
    return repair_to_independent_set(comp, res.bits).popcount();
  };

  const CalibrationResult cal = calibrate_threshold(graph, q_target, evaluator);

  const ThresholdGraph g_c = threshold_graph(graph, cal.c);
  const ThresholdGraph comp = complement(g_c);
  const QuboProblem qubo = build_qubo(comp, cfg.lambda1, cfg.lambda2);

  AnnealSchedule sched = calib;
  sched.sweeps = cfg.sweeps;
  sched.replicas = cfg.replicas;
  std::ostringstream tag;
  tag << "anneal/q=" << q_target;
  sched.seed = derive_seed(cfg.master_seed, tag.str());

  const SolveResult res = anneal(qubo, sched);
  const BitAssignment repaired = repair_to_independent_set(comp, res.bits);

  CliqueOutcome out;
  out.placement = clique_from_solution(g_c, repaired);
  out.placement.params.lambda1 = cfg.lambda1;
  out.placement.params.lambda2 = cfg.lambda2;
  out.placement.params.seed = sched.seed;
  out.c = cal.c;
  out.seed = sched.seed;
  out.energy = energy(qubo, repaired);
  out.penalty_free =
      out.energy == -cfg.lambda1 * static_cast<double>(out.placement.q());
  return out;
}

TrialStatistics stats_of(const std::vector<double>& values) {
  return trial_statistics(values);
}

}  // namespace

ResultBundle run_placement_experiment(const ExperimentConfig& config) {
  config.validate();

  ResultBundle bundle;
  bundle.config = config;

  // --- data ---
  DataMatrix data;
  DataMatrix reference;
  bool has_reference = false;
  if (config.use_synthetic()) {
    data = generate_vortex_street(config.synthetic);
    if (config.synthetic.noise_sigma > 0.0) {
      SyntheticSpec clean = config.synthetic;
      clean.noise_sigma = 0.0;
      reference = generate_vortex_street(clean);
      has_reference = true;
    }
  } else {
    data = read_matrix(config.data_path);
  }
  if (config.center) {
    const Eigen::VectorXd mean = data.values.rowwise().mean();
    data.values.colwise() -= mean;
    if (has_reference) reference.values.colwise() -= mean;
  }
  bundle.data_rows = static_cast<std::size_t>(data.rows());
  bundle.data_cols = static_cast<std::size_t>(data.cols());

  // --- basis ---
  const SvdFactorization svd = compute_svd(data);
  const RankEstimate estimate =
      optimal_hard_threshold_rank(svd.sigma, data.rows(), data.cols());
  bundle.rank_estimate = estimate.rank;
  Eigen::Index r = config.rank > 0 ? static_cast<Eigen::Index>(config.rank)
                                   : estimate.rank;
  r = std::min(r, svd.sigma.size());
  bundle.rank_used = r;
  const PodBasis basis = truncate(svd, r);

  // --- candidates and similarity graph ---
  const CandidateSet candidates =
      select_candidates(static_cast<std::size_t>(data.rows()), config.candidates);
  const bool wants_clique =
      std::find(config.methods.begin(), config.methods.end(),
                PlacementMethod::clique) != config.methods.end();
  const bool wants_greedy =
      std::find(config.methods.begin(), config.methods.end(),
                PlacementMethod::greedy) != config.methods.end();
  const bool wants_random =
      std::find(config.methods.begin(), config.methods.end(),
                PlacementMethod::random) != config.methods.end();

  std::optional<WeightedGraph> graph;
  if (wants_clique) graph.emplace(build_graph(basis, candidates));

  // --- evaluation window ---
  const auto m = static_cast<std::size_t>(data.cols());
  const std::size_t start = config.window_start;
  if (start >= m) throw ConfigError("config: window_start beyond the data");
  std::size_t length = config.window_length == 0 ? m - start : config.window_length;
  if (start + length > m) throw ConfigError("config: window extends beyond the data");

  ExperimentContext ctx{config, basis, window_of(data, start, length),
                        has_reference ? window_of(reference, start, length)
                                      : DataMatrix{},
                        has_reference,
                        config.probes.empty() ? auto_probes(data) : config.probes};
  for (std::uint32_t p : ctx.probes) {
    if (p >= data.rows()) throw ConfigError("config: probe index outside the field");
  }
  bundle.probes = ctx.probes;

  // greedy evaluations are reused by the efficiency report
  std::map<std::size_t, double> greedy_rmse_by_q;

  auto run_greedy_record = [&](std::size_t q, std::size_t q_requested) {
    MethodRecord rec;
    rec.method = "greedy";
    rec.q_requested = q_requested;
    const auto t0 = Clock::now();
    try {
      const Placement placement =
          greedy_determinant_placement(basis, candidates, q);
      rec.q = placement.q();
      rec.indices = placement.indices;
      evaluate_placement(ctx, placement, rec);
      greedy_rmse_by_q[rec.q] = rec.rmse_mean;
      bundle.summaries.push_back(MethodSummary{
          "greedy", rec.q, stats_of({rec.rmse_mean}), stats_of({rec.e_reconst})});
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    rec.wall_ms = ms_since(t0);
    bundle.records.push_back(std::move(rec));
  };

  for (std::size_t q_requested : config.q_list) {
    std::size_t q_matched = q_requested;

    if (wants_clique) {
      MethodRecord rec;
      rec.method = "clique";
      rec.q_requested = q_requested;
      const auto t0 = Clock::now();
      try {
        const CliqueOutcome outcome = solve_clique(config, *graph, q_requested);
        rec.q = outcome.placement.q();
        rec.indices = outcome.placement.indices;
        rec.threshold_c = outcome.c;
        rec.energy = outcome.energy;
        rec.penalty_free = outcome.penalty_free;
        rec.seed = outcome.seed;
        evaluate_placement(ctx, outcome.placement, rec);
        q_matched = rec.q;  // compare the others at the achieved size
        bundle.summaries.push_back(MethodSummary{
            "clique", rec.q, stats_of({rec.rmse_mean}), stats_of({rec.e_reconst})});
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      rec.wall_ms = ms_since(t0);
      bundle.records.push_back(std::move(rec));
    }

    if (wants_greedy) {
      run_greedy_record(q_matched, q_requested);
    }

    if (wants_random) {
      std::vector<double> rmse_trials;
      std::vector<double> e_trials;
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        MethodRecord rec;
        rec.method = "random";
        rec.q_requested = q_requested;
        rec.trial = trial;
        std::ostringstream tag;
        tag << "random/q=" << q_requested << "/trial=" << trial;
        rec.seed = derive_seed(config.master_seed, tag.str());
        const auto t0 = Clock::now();
        try {
          const Placement placement =
              random_placement(candidates, q_matched, rec.seed);
          rec.q = placement.q();
          rec.indices = placement.indices;
          evaluate_placement(ctx, placement, rec);
          rmse_trials.push_back(rec.rmse_mean);
          e_trials.push_back(rec.e_reconst);
        } catch (const std::exception& e) {
          rec.error = e.what();
        }
        rec.wall_ms = ms_since(t0);
        bundle.records.push_back(std::move(rec));
      }
      if (!rmse_trials.empty()) {
        bundle.summaries.push_back(MethodSummary{"random", q_matched,
                                                 stats_of(rmse_trials),
                                                 stats_of(e_trials)});
      }
    }
  }

  // --- sensor-efficiency report: smallest q where the clique placement
  // matches greedy running with 4x the sensors ---
  if (config.efficiency_report && wants_clique && wants_greedy) {
    std::vector<std::pair<std::size_t, double>> clique_points;
    for (const MethodRecord& rec : bundle.records) {
      if (rec.method == "clique" && rec.error.empty()) {
        clique_points.emplace_back(rec.q, rec.rmse_mean);
      }
    }
    std::sort(clique_points.begin(), clique_points.end());
    for (const auto& [q, clique_rmse] : clique_points) {
      const std::size_t big_q = 4 * q;
      if (big_q > candidates.size()) continue;
      if (!greedy_rmse_by_q.count(big_q)) {
        run_greedy_record(big_q, big_q);
      }
      if (!greedy_rmse_by_q.count(big_q)) continue;  // evaluation failed
      const double greedy_rmse = greedy_rmse_by_q[big_q];
      if (clique_rmse <= greedy_rmse) {
        bundle.efficiency.computed = true;
        bundle.efficiency.q_star = q;
        bundle.efficiency.greedy_q = big_q;
        bundle.efficiency.clique_rmse = clique_rmse;
        bundle.efficiency.greedy_rmse = greedy_rmse;
        bundle.efficiency.sensor_ratio =
            static_cast<double>(q) / static_cast<double>(big_q);
        break;
      }
    }
  }

  return bundle;
}

namespace {

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["data"] = c.data_path;
  j["synthetic"] = {{"nv", c.synthetic.grid.n_v},
                    {"nh", c.synthetic.grid.n_h},
                    {"snapshots", c.synthetic.snapshots},
                    {"modes", c.synthetic.modes},
                    {"speed", c.synthetic.speed},
                    {"wavelength", c.synthetic.wavelength},
                    {"amplitude", c.synthetic.amplitude},
                    {"noise", c.synthetic.noise_sigma},
                    {"seed", c.synthetic.seed}};
  j["center"] = c.center;
  j["rank"] = c.rank;
  j["candidates"] = c.candidates;
  std::vector<std::string> methods;
  for (PlacementMethod m : c.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["q"] = c.q_list;
  j["lambda1"] = c.lambda1;
  j["lambda2"] = c.lambda2;
  j["sweeps"] = c.sweeps;
  j["replicas"] = c.replicas;
  j["temp_start"] = c.temp_start;
  j["temp_end"] = c.temp_end;
  j["calibration_sweeps"] = c.calibration_sweeps;
  j["calibration_replicas"] = c.calibration_replicas;
  j["trials"] = c.trials;
  j["reconstruction"] = to_string(c.reconstruction);
  j["radius"] = c.filter_radius;
  j["folds"] = c.cv_folds;
  j["lambda_count"] = c.lambda_grid.count;
  j["lambda_min_ratio"] = c.lambda_grid.min_ratio;
  j["probes"] = c.probes;
  j["window_start"] = c.window_start;
  j["window_length"] = c.window_length;
  j["efficiency_report"] = c.efficiency_report;
  j["out"] = c.out_dir;
  j["seed"] = c.master_seed;
  return j;
}

}  // namespace

nlohmann::ordered_json bundle_to_json(const ResultBundle& bundle, bool with_wall) {
  nlohmann::ordered_json j;
  j["format_version"] = bundle.format_version;
  j["config"] = config_to_json(bundle.config);
  j["data"] = {{"rows", bundle.data_rows},
               {"cols", bundle.data_cols},
               {"rank_used", bundle.rank_used},
               {"rank_estimate", bundle.rank_estimate}};
  j["probes"] = bundle.probes;

  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const MethodRecord& r : bundle.records) {
    nlohmann::ordered_json jr;
    jr["method"] = r.method;
    jr["q_requested"] = r.q_requested;
    jr["q"] = r.q;
    jr["trial"] = r.trial;
    jr["seed"] = r.seed;
    jr["indices"] = r.indices;
    jr["c"] = r.threshold_c;
    jr["energy"] = r.energy;
    jr["penalty_free"] = r.penalty_free;
    jr["e_reconst"] = r.e_reconst;
    jr["rmse_by_probe"] = r.rmse_by_probe;
    jr["rmse_mean"] = r.rmse_mean;
    jr["wall_ms"] = with_wall ? r.wall_ms : 0.0;
    jr["error"] = r.error;
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);

  nlohmann::ordered_json summaries = nlohmann::ordered_json::array();
  for (const MethodSummary& s : bundle.summaries) {
    nlohmann::ordered_json js;
    js["method"] = s.method;
    js["q"] = s.q;
    js["trials"] = s.rmse.trials;
    js["rmse_mean"] = s.rmse.mean;
    js["rmse_std"] = s.rmse.std_dev;
    js["rmse_per_trial"] = s.rmse.per_trial;
    js["e_reconst_mean"] = s.e_reconst.mean;
    js["e_reconst_std"] = s.e_reconst.std_dev;
    summaries.push_back(std::move(js));
  }
  j["summaries"] = std::move(summaries);

  j["efficiency"] = {{"computed", bundle.efficiency.computed},
                     {"q_star", bundle.efficiency.q_star},
                     {"greedy_q", bundle.efficiency.greedy_q},
                     {"clique_rmse", bundle.efficiency.clique_rmse},
                     {"greedy_rmse", bundle.efficiency.greedy_rmse},
                     {"sensor_ratio", bundle.efficiency.sensor_ratio}};
  return j;
}

void emit_results(const ResultBundle& bundle, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("emit_results: cannot create directory " + dir);

  {
    std::ofstream out(dir + "/results.json", std::ios::trunc);
    if (!out) throw DataError("emit_results: cannot write results.json");
    out << bundle_to_json(bundle).dump(2) << "\n";
  }

  char buf[40];
  const auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  {
    std::ofstream out(dir + "/records.csv", std::ios::trunc);
    if (!out) throw DataError("emit_results: cannot write records.csv");
    out << "method,q_requested,q,trial,seed,c,energy,penalty_free,"
           "e_reconst,rmse_mean,wall_ms,error\n";
    for (const MethodRecord& r : bundle.records) {
      out << r.method << "," << r.q_requested << "," << r.q << "," << r.trial
          << "," << r.seed << "," << fmt(r.threshold_c) << "," << fmt(r.energy)
          << "," << (r.penalty_free ? 1 : 0) << "," << fmt(r.e_reconst) << ","
          << fmt(r.rmse_mean) << "," << fmt(r.wall_ms) << "," << r.error << "\n";
    }
  }

  {
    std::ofstream out(dir + "/summary.csv", std::ios::trunc);
    if (!out) throw DataError("emit_results: cannot write summary.csv");
    out << "method,q,trials,rmse_mean,rmse_std,e_reconst_mean,e_reconst_std\n";
    for (const MethodSummary& s : bundle.summaries) {
      out << s.method << "," << s.q << "," << s.rmse.trials << ","
          << fmt(s.rmse.mean) << "," << fmt(s.rmse.std_dev) << ","
          << fmt(s.e_reconst.mean) << "," << fmt(s.e_reconst.std_dev) << "\n";
    }
  }
}

}  // namespace splace

// splace: data-driven sensor placement and field reconstruction.
//
// Subcommands: synth, decompose, place, reconstruct, evaluate, render,
// experiment. Exit codes: 0 success, 2 configuration error, 3 data error,
// 4 solver infeasibility.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "splace/anneal.hpp"
#include "splace/baselines.hpp"
#include "splace/config.hpp"
#include "splace/errors.hpp"
#include "splace/experiment.hpp"
#include "splace/image.hpp"
#include "splace/lasso.hpp"
#include "splace/matrix_io.hpp"
#include "splace/placement_io.hpp"
#include "splace/qubo.hpp"
#include "splace/reconstruction.hpp"
#include "splace/synthetic.hpp"

namespace {

using namespace splace;

PodBasis basis_for(const DataMatrix& data, std::int64_t rank, bool center) {
  const SvdFactorization svd = compute_svd(data, center);
  Eigen::Index r;
  if (rank > 0) {
    r = std::min<Eigen::Index>(rank, svd.sigma.size());
  } else {
    r = optimal_hard_threshold_rank(svd.sigma, data.rows(), data.cols()).rank;
  }
  return truncate(svd, r);
}

int run(int argc, char** argv) {
  CLI::App app{"Data-driven sensor placement via annealed clique search"};
  app.require_subcommand(1);

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "Generate a synthetic vortex-street dataset");
  SyntheticSpec spec;
  std::string synth_out = "synthetic.spmx";
  synth->add_option("--nv", spec.grid.n_v, "Grid rows")->capture_default_str();
  synth->add_option("--nh", spec.grid.n_h, "Grid columns")->capture_default_str();
  synth->add_option("--snapshots", spec.snapshots, "Snapshot count")->capture_default_str();
  synth->add_option("--modes", spec.modes, "Traveling mode pairs")->capture_default_str();
  synth->add_option("--speed", spec.speed, "Convection speed, cells/snapshot")->capture_default_str();
  synth->add_option("--wavelength", spec.wavelength, "Fundamental wavelength, cells")->capture_default_str();
  synth->add_option("--amplitude", spec.amplitude, "Signal amplitude")->capture_default_str();
  synth->add_option("--noise", spec.noise_sigma, "Relative noise sigma")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output matrix file")->capture_default_str();

  // --- decompose ---
  auto* decompose = app.add_subcommand("decompose", "SVD of a snapshot matrix and a rank report");
  std::string dec_data;
  bool dec_center = false;
  std::size_t dec_top = 16;
  decompose->add_option("--data", dec_data, "Input matrix file")->required();
  decompose->add_flag("--center", dec_center, "Subtract the temporal mean first");
  decompose->add_option("--top", dec_top, "Singular values to print")->capture_default_str();

  // --- place ---
  auto* place = app.add_subcommand("place", "Select sensor locations");
  std::string place_data, place_method = "clique", place_out = "placement.json";
  std::size_t place_q = 0, place_k = 2000, place_q_target = 0;
  std::int64_t place_rank = 0;
  double place_c = -1.0, place_l1 = 1.0, place_l2 = 2.0;
  std::uint64_t place_seed = 0;
  bool place_center = false;
  place->add_option("--data", place_data, "Input matrix file")->required();
  place->add_option("--method", place_method, "clique|greedy|random")->capture_default_str();
  place->add_option("--q", place_q, "Sensor count (greedy/random; clique target unless --c)");
  place->add_option("--k", place_k, "Candidate pool size")->capture_default_str();
  place->add_option("--c", place_c, "Explicit weight threshold (clique)");
  place->add_option("--q-target", place_q_target, "Calibrate the threshold to this clique size");
  place->add_option("--lambda1", place_l1, "Vertex reward weight")->capture_default_str();
  place->add_option("--lambda2", place_l2, "Edge penalty weight")->capture_default_str();
  place->add_option("--seed", place_seed, "Seed")->capture_default_str();
  place->add_option("--rank", place_rank, "Truncation rank (0 = hard-threshold estimate)")->capture_default_str();
  place->add_flag("--center", place_center, "Subtract the temporal mean first");
  place->add_option("--out", place_out, "Placement JSON output")->capture_default_str();

  // --- reconstruct ---
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct full fields from sensor data");
  std::string rec_data, rec_placement, rec_out = "reconstructed.spmx", rec_reference;
  std::int64_t rec_rank = 0;
  bool rec_pinv = false, rec_lasso = false, rec_center = false;
  int rec_radius = 1, rec_folds = 10;
  LambdaGridSpec rec_grid;
  rec->add_option("--data", rec_data, "Input matrix file")->required();
  rec->add_option("--placement", rec_placement, "Placement JSON")->required();
  rec->add_flag("--pinv", rec_pinv, "Pseudo-inverse path");
  rec->add_flag("--lasso", rec_lasso, "Filtered sparse-fit path");
  rec->add_option("--radius", rec_radius, "Mean-filter radius in cells")->capture_default_str();
  rec->add_option("--folds", rec_folds, "Cross-validation folds")->capture_default_str();
  rec->add_option("--lambda-count", rec_grid.count, "Penalty grid size")->capture_default_str();
  rec->add_option("--lambda-min-ratio", rec_grid.min_ratio, "Smallest penalty / largest")->capture_default_str();
  rec->add_option("--rank", rec_rank, "Truncation rank (0 = hard-threshold estimate)")->capture_default_str();
  rec->add_option("--reference", rec_reference, "Reference matrix for error metrics");
  rec->add_flag("--center", rec_center, "Subtract the temporal mean first");
  rec->add_option("--out", rec_out, "Reconstructed matrix output")->capture_default_str();

  // --- evaluate ---
  auto* eval = app.add_subcommand("evaluate", "Error metrics between two matrices");
  std::string eval_ref, eval_rec;
  std::vector<std::uint32_t> eval_probes;
  eval->add_option("--reference", eval_ref, "Reference matrix")->required();
  eval->add_option("--reconstructed", eval_rec, "Reconstructed matrix")->required();
  eval->add_option("--probes", eval_probes, "Probe point indices");

  // --- render ---
  auto* render = app.add_subcommand("render", "Write one snapshot as a PGM image");
  std::string render_data, render_out = "field.pgm", render_placement;
  std::size_t render_snapshot = 0;
  double render_min = 0.0, render_max = 0.0;
  render->add_option("--data", render_data, "Input matrix file")->required();
  render->add_option("--snapshot", render_snapshot, "Snapshot index")->capture_default_str();
  render->add_option("--min", render_min, "Range minimum (default: field min)");
  render->add_option("--max", render_max, "Range maximum (default: field max)");
  render->add_option("--placement", render_placement, "Overlay sensor markers");
  render->add_option("--out", render_out, "Output PGM")->capture_default_str();

  // --- experiment ---
  auto* exp = app.add_subcommand("experiment", "Run the full placement/reconstruction protocol");
  std::string exp_config, exp_out;
  std::optional<std::uint64_t> exp_seed;
  exp->add_option("--config", exp_config, "Experiment config file")->required();
  exp->add_option("--seed", exp_seed, "Override the master seed");
  exp->add_option("--out", exp_out, "Override the output directory");

  CLI11_PARSE(app, argc, argv);

  if (synth->parsed()) {
    const DataMatrix data = generate_vortex_street(spec);
    write_matrix(data, synth_out);
    std::cout << "wrote " << data.rows() << "x" << data.cols() << " matrix to "
              << synth_out << "\n";
    return 0;
  }

  if (decompose->parsed()) {
    const DataMatrix data = read_matrix(dec_data);
    const SvdFactorization svd = compute_svd(data, dec_center);
    const RankEstimate est =
        optimal_hard_threshold_rank(svd.sigma, data.rows(), data.cols());
    std::cout << "points " << data.rows() << ", snapshots " << data.cols()
              << ", spectrum size " << svd.sigma.size() << "\n";
    const auto top = std::min<Eigen::Index>(static_cast<Eigen::Index>(dec_top),
                                            svd.sigma.size());
    for (Eigen::Index i = 0; i < top; ++i) {
      std::printf("sigma[%3ld] = %.6e\n", static_cast<long>(i), svd.sigma[i]);
    }
    std::printf("hard-threshold rank %ld (threshold %.6e, omega %.4f%s)\n",
                static_cast<long>(est.rank), est.threshold, est.omega,
                est.degenerate ? ", degenerate spectrum" : "");
    return 0;
  }

  if (place->parsed()) {
    const DataMatrix data = read_matrix(place_data);
    const PodBasis basis = basis_for(data, place_rank, place_center);
    const CandidateSet candidates =
        select_candidates(static_cast<std::size_t>(data.rows()), place_k);
    const PlacementMethod method = parse_method(place_method);

    Placement placement;
    if (method == PlacementMethod::greedy) {
      if (place_q == 0) throw ConfigError("place: greedy needs --q");
      placement = greedy_determinant_placement(basis, candidates, place_q);
    } else if (method == PlacementMethod::random) {
      if (place_q == 0) throw ConfigError("place: random needs --q");
      placement = random_placement(candidates, place_q, place_seed);
    } else {
      const WeightedGraph graph = build_graph(basis, candidates);
      double c = place_c;
      if (c < 0.0) {
        const std::size_t target = place_q_target ? place_q_target : place_q;
        if (target == 0) throw ConfigError("place: clique needs --c, --q-target or --q");
        std::size_t probe = 0;
        const CliqueSizeFn evaluator = [&](const ThresholdGraph& g_c) {
          const ThresholdGraph comp = complement(g_c);
          const QuboProblem qubo = build_qubo(comp, place_l1, place_l2);
          AnnealSchedule sched = default_schedule(qubo, place_seed + 1000 + probe++);
          sched.sweeps = 1000;
          sched.replicas = 2;
          return repair_to_independent_set(comp, anneal(qubo, sched).bits).popcount();
        };
        const CalibrationResult cal = calibrate_threshold(graph, target, evaluator);
        c = cal.c;
        std::cout << "calibrated c = " << c << " (achieved clique size "
                  << cal.achieved << ")\n";
      }
      const ThresholdGraph g_c = threshold_graph(graph, c);
      const ThresholdGraph comp = complement(g_c);
      const QuboProblem qubo = build_qubo(comp, place_l1, place_l2);
      const SolveResult res = anneal(qubo, default_schedule(qubo, place_seed));
      const BitAssignment repaired = repair_to_independent_set(comp, res.bits);
      placement = clique_from_solution(g_c, repaired);
      placement.params.lambda1 = place_l1;
      placement.params.lambda2 = place_l2;
      placement.params.seed = place_seed;
      const double h = energy(qubo, repaired);
      std::cout << "clique size " << placement.q() << ", energy " << h
                << (h == -place_l1 * static_cast<double>(placement.q())
                        ? " (penalty-free)"
                        : "")
                << "\n";
    }
    placement.params.rank = basis.rank;
    save_placement(placement, place_out);
    std::cout << "wrote " << placement.q() << " sensors to " << place_out << "\n";
    return 0;
  }

  if (rec->parsed()) {
    if (rec_pinv == rec_lasso) {
      throw ConfigError("reconstruct: choose exactly one of --pinv / --lasso");
    }
    const DataMatrix data = read_matrix(rec_data);
    const PodBasis basis = basis_for(data, rec_rank, rec_center);
    const Placement placement = load_placement(rec_placement);
    std::optional<DataMatrix> reference;
    if (!rec_reference.empty()) reference = read_matrix(rec_reference);

    ReconstructionReport report;
    if (rec_pinv) {
      report = pinv_pipeline(basis, placement, data, {},
                             reference ? &*reference : nullptr);
    } else {
      report = denoise_pipeline(basis, placement, data, rec_radius, rec_grid,
                                rec_folds, {}, reference ? &*reference : nullptr);
    }
    write_matrix(DataMatrix{report.fields, data.grid}, rec_out);
    std::printf("e_reconst = %.6e (%s path, rank %ld)\n", report.e_reconst,
                report.method.c_str(), static_cast<long>(basis.rank));
    std::cout << "wrote reconstruction to " << rec_out << "\n";
    return 0;
  }

  if (eval->parsed()) {
    const DataMatrix ref = read_matrix(eval_ref);
    const DataMatrix recon = read_matrix(eval_rec);
    std::printf("e_reconst = %.6e\n", reconstruction_error(ref, recon));
    for (std::uint32_t p : eval_probes) {
      if (p >= ref.rows()) throw ConfigError("evaluate: probe outside the field");
      std::vector<double> a(static_cast<std::size_t>(ref.cols()));
      std::vector<double> b(a.size());
      for (Eigen::Index l = 0; l < ref.cols(); ++l) {
        a[static_cast<std::size_t>(l)] = recon.values(p, l);
        b[static_cast<std::size_t>(l)] = ref.values(p, l);
      }
      std::printf("probe %u rmse = %.6e\n", p, probe_rmse(a, b));
    }
    return 0;
  }

  if (render->parsed()) {
    const DataMatrix data = read_matrix(render_data);
    if (!data.grid) throw DataError("render: matrix has no grid shape");
    if (render_snapshot >= static_cast<std::size_t>(data.cols())) {
      throw ConfigError("render: snapshot index out of range");
    }
    const Eigen::VectorXd field = data.values.col(static_cast<Eigen::Index>(render_snapshot));
    double lo = render_min, hi = render_max;
    if (lo == 0.0 && hi == 0.0) {
      lo = field.minCoeff();
      hi = field.maxCoeff();
    }
    std::vector<std::uint32_t> markers;
    if (!render_placement.empty()) markers = load_placement(render_placement).indices;
    export_field_image(field, *data.grid, render_out, lo, hi, markers);
    std::cout << "wrote " << render_out << "\n";
    return 0;
  }

  if (exp->parsed()) {
    ExperimentConfig config = parse_config_file(exp_config);
    if (exp_seed) config.master_seed = *exp_seed;
    if (!exp_out.empty()) config.out_dir = exp_out;
    const ResultBundle bundle = run_placement_experiment(config);
    emit_results(bundle, config.out_dir);
    for (const MethodSummary& s : bundle.summaries) {
      std::printf("%-6s q=%-4zu rmse %.6e +/- %.6e   e_reconst %.6e\n",
                  s.method.c_str(), s.q, s.rmse.mean, s.rmse.std_dev,
                  s.e_reconst.mean);
    }
    if (bundle.efficiency.computed) {
      std::printf("efficiency: clique q=%zu matches greedy q=%zu "
                  "(sensor ratio %.3f)\n",
                  bundle.efficiency.q_star, bundle.efficiency.greedy_q,
                  bundle.efficiency.sensor_ratio);
    }
    std::cout << "results written to " << config.out_dir << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

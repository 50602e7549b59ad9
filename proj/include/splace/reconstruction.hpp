#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "splace/data_matrix.hpp"
#include "splace/placement.hpp"
#include "splace/pod.hpp"

namespace splace {

/// Theta = C * modes: the placement-indexed rows of the basis, with its
/// Moore-Penrose pseudo-inverse cached (singular values below 1e-12 of the
/// largest are treated as zero).
struct MeasurementOperator {
  Placement placement;
  Eigen::MatrixXd theta;       // q x r
  Eigen::MatrixXd theta_pinv;  // r x q
  Eigen::Index effective_rank = 0;
  bool rank_deficient = false;
};

MeasurementOperator make_operator(const PodBasis& basis, const Placement& placement);

/// Minimum-norm least-squares coefficients a = Theta^+ y.
Eigen::VectorXd pinv_coefficients(const MeasurementOperator& op,
                                  const Eigen::VectorXd& y);

/// Full field from modal coefficients: modes * a.
Eigen::VectorXd reconstruct_field(const PodBasis& basis, const Eigen::VectorXd& a);

/// Snapshot-averaged relative squared error:
///   (1/m) * sum_l |x_l - xr_l|^2 / |x_l|^2.
/// Rejects zero-norm reference snapshots, naming the column.
double reconstruction_error(const DataMatrix& x, const DataMatrix& xr);

/// Mean of the (2*radius+1)^2 window centered at a grid point, clipped at
/// the boundaries (partial windows average the in-bounds cells only).
double spatial_mean_filter(const Eigen::VectorXd& field, const GridShape& grid,
                           std::size_t point, int radius);

/// sqrt(mean((a_t - b_t)^2)) over two equal-length series.
double probe_rmse(const std::vector<double>& a, const std::vector<double>& b);

struct ReconstructionReport {
  Eigen::MatrixXd coefficients;       // r x m, column l = a_l
  Eigen::MatrixXd fields;             // n x m, column l = reconstructed snapshot
  double e_reconst = 0.0;
  std::vector<std::uint32_t> probes;
  std::vector<double> rmse_by_probe;
  std::string method;                 // "pinv" or "lasso"
  bool rank_deficient = false;
  std::size_t lasso_nonconverged = 0; // snapshots whose fit hit the pass cap
  std::vector<double> selected_lambdas;
};

/// Validation path: per snapshot, read the placement points directly,
/// solve by pseudo-inverse and expand. Errors and probe series are
/// measured against `reference` when given, otherwise against `data`.
ReconstructionReport pinv_pipeline(const PodBasis& basis, const Placement& placement,
                                   const DataMatrix& data,
                                   const std::vector<std::uint32_t>& probes = {},
                                   const DataMatrix* reference = nullptr);

}  // namespace splace

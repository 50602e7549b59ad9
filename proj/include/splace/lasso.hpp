#pragma once

#include <Eigen/Dense>
#include <vector>

#include "splace/data_matrix.hpp"
#include "splace/reconstruction.hpp"

namespace splace {

struct LassoResult {
  Eigen::VectorXd coefficients;
  bool converged = false;
  std::size_t passes = 0;
  std::vector<double> objective_history;  // one entry per completed pass
};

/// Cyclic coordinate descent for
///   min_a (1/2q) |phi - Theta a|^2 + lambda |a|_1.
/// Stops when no coefficient moves by more than 1e-9 in a pass, or after
/// 10000 passes (then `converged` is false and the best iterate is
/// returned). lambda = 0 degenerates to least squares.
LassoResult lasso_fit(const MeasurementOperator& op, const Eigen::VectorXd& phi,
                      double lambda);

/// Largest KKT/subgradient residual of a candidate solution; optimal
/// solutions score ~0. Used by tests and the acceptance suite.
double lasso_kkt_violation(const Eigen::MatrixXd& theta, const Eigen::VectorXd& phi,
                           double lambda, const Eigen::VectorXd& alpha);

struct LambdaGridSpec {
  std::size_t count = 50;
  double min_ratio = 1e-4;  // smallest lambda as a fraction of lambda_max
};

/// Log-spaced grid from lambda_max = max|Theta^T phi|/q down to
/// min_ratio * lambda_max, descending.
std::vector<double> make_lambda_grid(const Eigen::MatrixXd& theta,
                                     const Eigen::VectorXd& phi,
                                     const LambdaGridSpec& spec);

struct LassoCvResult {
  double lambda = 0.0;
  Eigen::VectorXd coefficients;
  std::vector<double> cv_error;    // per grid entry, mean over folds
  std::vector<double> cv_se;       // per grid entry, standard error over folds
  std::size_t min_index = 0;       // grid index minimizing cv_error
  std::size_t selected_index = 0;  // one-standard-error pick
};

/// K-fold cross-validated lasso with the one-standard-error rule: among all
/// grid entries whose CV error is within one standard error of the minimum,
/// the largest lambda wins; the final fit uses all measurements at that
/// lambda. Folds assign measurement i to fold i mod folds. The grid must be
/// descending; fits warm-start along it.
LassoCvResult lasso_cv(const MeasurementOperator& op, const Eigen::VectorXd& phi,
                       int folds, const std::vector<double>& lambda_grid);

/// Denoising path: filter the sensor readings with a spatial mean window,
/// fit sparse coefficients per snapshot by cross-validated lasso, expand to
/// full fields. Error metrics compare against `reference` when given,
/// otherwise against `noisy` itself.
ReconstructionReport denoise_pipeline(const PodBasis& basis, const Placement& placement,
                                      const DataMatrix& noisy, int radius,
                                      const LambdaGridSpec& grid_spec,
                                      int folds = 10,
                                      const std::vector<std::uint32_t>& probes = {},
                                      const DataMatrix* reference = nullptr);

}  // namespace splace

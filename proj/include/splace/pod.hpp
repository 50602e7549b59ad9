#pragma once

#include <Eigen/Dense>

#include "splace/data_matrix.hpp"

namespace splace {

/// Economy-size SVD X = U diag(sigma) V^T with p = min(n, m) columns.
struct SvdFactorization {
  Eigen::MatrixXd u;      // n x p, orthonormal columns
  Eigen::VectorXd sigma;  // p, descending, nonnegative
  Eigen::MatrixXd v;      // m x p, orthonormal columns
};

/// Rank-r truncation of an SVD. `modes` are the leading left singular
/// vectors; `weighted_rows` scales each mode column by its singular value,
/// so row j is the feature vector of spatial point j used for the
/// similarity graph.
struct PodBasis {
  Eigen::MatrixXd modes;           // n x r
  Eigen::VectorXd singular_values; // r, descending
  Eigen::Index rank = 0;
  Eigen::MatrixXd weighted_rows;   // n x r, modes * diag(singular_values)
};

struct RankEstimate {
  Eigen::Index rank = 1;
  double threshold = 0.0;  // tau = omega(beta) * median(sigma)
  double omega = 0.0;
  bool degenerate = false; // all-zero spectrum, rank clamped to 1
};

/// Economy SVD of the snapshot matrix. Rejects non-finite input with a
/// diagnostic naming the offending entry. With `center_temporal_mean` the
/// per-point mean over snapshots is subtracted first (off by default; the
/// factorization then describes the fluctuation field).
SvdFactorization compute_svd(const DataMatrix& x, bool center_temporal_mean = false);

/// First r singular triplets plus the singular-value-weighted rows.
PodBasis truncate(const SvdFactorization& svd, Eigen::Index r);

/// Known-noise hard-threshold coefficient lambda*(beta); lambda*(1) = 4/sqrt(3).
double hard_threshold_coefficient(double beta);

/// Median-rule coefficient omega(beta), cubic approximation.
double median_rule_omega(double beta);

/// Rank suggested by the optimal hard threshold for singular values under
/// unknown noise: count of sigma[i] > omega(beta) * median(sigma), clamped
/// to at least 1. beta = min(n,m)/max(n,m).
RankEstimate optimal_hard_threshold_rank(const Eigen::VectorXd& sigma,
                                         Eigen::Index n, Eigen::Index m);

/// Row j of modes * diag(singular_values).
Eigen::VectorXd weighted_row(const PodBasis& basis, Eigen::Index j);

}  // namespace splace

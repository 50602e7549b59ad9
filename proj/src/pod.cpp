#include "splace/pod.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

SvdFactorization compute_svd(const DataMatrix& x, bool center_temporal_mean) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  if (n < 1 || m < 1) {
    throw DataError("compute_svd: matrix must be at least 1x1");
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!std::isfinite(x.values(i, j))) {
        std::ostringstream msg;
        msg << "compute_svd: non-finite value " << x.values(i, j)
            << " at row " << i << ", snapshot " << j;
        throw DataError(msg.str());
      }
    }
  }

  Eigen::MatrixXd work = x.values;
  if (center_temporal_mean) {
    work.colwise() -= work.rowwise().mean();
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(work,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw DataError("compute_svd: SVD kernel failed to converge");
  }
  return SvdFactorization{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

PodBasis truncate(const SvdFactorization& svd, Eigen::Index r) {
  const Eigen::Index p = svd.sigma.size();
  if (r < 1 || r > p) {
    std::ostringstream msg;
    msg << "truncate: rank " << r << " outside valid interval [1, " << p << "]";
    throw ConfigError(msg.str());
  }
  PodBasis basis;
  basis.modes = svd.u.leftCols(r);
  basis.singular_values = svd.sigma.head(r);
  basis.rank = r;
  basis.weighted_rows = basis.modes * basis.singular_values.asDiagonal();
  return basis;
}

double hard_threshold_coefficient(double beta) {
  return std::sqrt(2.0 * (beta + 1.0) +
                   8.0 * beta /
                       ((beta + 1.0) + std::sqrt(beta * beta + 14.0 * beta + 1.0)));
}

double median_rule_omega(double beta) {
  return 0.56 * beta * beta * beta - 0.95 * beta * beta + 1.82 * beta + 1.43;
}

RankEstimate optimal_hard_threshold_rank(const Eigen::VectorXd& sigma,
                                         Eigen::Index n, Eigen::Index m) {
  if (n < 1 || m < 1 || sigma.size() < 1) {
    throw ConfigError("optimal_hard_threshold_rank: empty input");
  }
  for (Eigen::Index i = 0; i + 1 < sigma.size(); ++i) {
    if (sigma[i] < sigma[i + 1]) {
      throw ConfigError("optimal_hard_threshold_rank: sigma not descending");
    }
  }
  if (sigma[sigma.size() - 1] < 0.0) {
    throw ConfigError("optimal_hard_threshold_rank: negative singular value");
  }

  RankEstimate est;
  const double beta = static_cast<double>(std::min(n, m)) /
                      static_cast<double>(std::max(n, m));
  est.omega = median_rule_omega(beta);

  // Median of the spectrum; sigma arrives descending.
  const Eigen::Index p = sigma.size();
  const double median = (p % 2 == 1)
                            ? sigma[p / 2]
                            : 0.5 * (sigma[p / 2 - 1] + sigma[p / 2]);
  est.threshold = est.omega * median;

  if (sigma[0] <= 0.0) {
    est.rank = 1;
    est.degenerate = true;
    return est;
  }
  Eigen::Index count = 0;
  while (count < p && sigma[count] > est.threshold) ++count;
  est.rank = std::max<Eigen::Index>(count, 1);
  return est;
}

Eigen::VectorXd weighted_row(const PodBasis& basis, Eigen::Index j) {
  if (j < 0 || j >= basis.weighted_rows.rows()) {
    std::ostringstream msg;
    msg << "weighted_row: index " << j << " outside [0, "
        << basis.weighted_rows.rows() << ")";
    throw ConfigError(msg.str());
  }
  return basis.weighted_rows.row(j);
}

}  // namespace splace

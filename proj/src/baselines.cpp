#include "splace/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "splace/errors.hpp"
#include "splace/rng.hpp"

namespace splace {

Placement greedy_determinant_placement(const PodBasis& basis,
                                       const CandidateSet& candidates,
                                       std::size_t q) {
  const std::size_t k = candidates.size();
  if (q < 1 || q > k) {
    std::ostringstream msg;
    msg << "greedy_determinant_placement: q " << q << " outside [1, " << k << "]";
    throw ConfigError(msg.str());
  }
  const Eigen::Index r = basis.rank;

  Eigen::MatrixXd rows(k, r);  // unweighted mode rows of the candidates
  for (std::size_t c = 0; c < k; ++c) {
    rows.row(c) = basis.modes.row(candidates.indices[c]);
  }

  std::vector<bool> taken(k, false);
  std::vector<std::uint32_t> picks;
  picks.reserve(q);

  // Regime 1 (selection size <= r): the determinant gain of adding row u is
  // its squared residual against the span of the rows already picked, so we
  // grow an orthonormal basis of that span and keep per-candidate residual
  // norms up to date.
  Eigen::VectorXd gain = rows.rowwise().squaredNorm();
  Eigen::MatrixXd ortho(r, std::min<std::size_t>(q, static_cast<std::size_t>(r)));
  Eigen::Index ortho_cols = 0;

  const std::size_t regime1 = std::min<std::size_t>(q, static_cast<std::size_t>(r));
  while (picks.size() < regime1) {
    std::size_t best = k;
    double best_gain = -1.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (taken[c]) continue;
      if (gain[c] > best_gain) {  // strict: first max wins, indices ascend
        best_gain = gain[c];
        best = c;
      }
    }
    taken[best] = true;
    picks.push_back(candidates.indices[best]);

    Eigen::VectorXd res = rows.row(best).transpose();
    if (ortho_cols > 0) {
      res -= ortho.leftCols(ortho_cols) *
             (ortho.leftCols(ortho_cols).transpose() * res);
    }
    const double norm = res.norm();
    if (norm > 1e-12) {
      ortho.col(ortho_cols) = res / norm;
      const Eigen::VectorXd proj = rows * ortho.col(ortho_cols);
      gain = (gain.array() - proj.array().square()).max(0.0).matrix();
      ++ortho_cols;
    }
    // norm ~ 0 means every remaining candidate lies in the span already;
    // gains are all ~ 0 and further picks fall back to index order.
  }

  if (picks.size() < q) {
    // Regime 2 (selection size > r): maximize det(Theta^T Theta); the gain
    // of adding u is u^T M^{-1} u, maintained by Sherman-Morrison updates.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(r, r);
    for (std::size_t c = 0; c < k; ++c) {
      if (taken[c]) gram += rows.row(c).transpose() * rows.row(c);
    }
    Eigen::MatrixXd minv;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
        ldlt.vectorD().minCoeff() > 1e-12 * ldlt.vectorD().maxCoeff()) {
      minv = ldlt.solve(Eigen::MatrixXd::Identity(r, r));
    } else {
      minv = gram.completeOrthogonalDecomposition().pseudoInverse();
    }

    for (std::size_t c = 0; c < k; ++c) {
      gain[c] = rows.row(c) * minv * rows.row(c).transpose();
    }

    while (picks.size() < q) {
      std::size_t best = k;
      double best_gain = -1.0;
      for (std::size_t c = 0; c < k; ++c) {
        if (taken[c]) continue;
        if (gain[c] > best_gain) {
          best_gain = gain[c];
          best = c;
        }
      }
      taken[best] = true;
      picks.push_back(candidates.indices[best]);

      const Eigen::VectorXd u = rows.row(best).transpose();
      const Eigen::VectorXd v = minv * u;
      const double denom = 1.0 + u.dot(v);
      minv -= (v * v.transpose()) / denom;
      const Eigen::VectorXd s = rows * v;
      gain = (gain.array() - s.array().square() / denom).max(0.0).matrix();
    }
  }

  Placement p;
  p.method = PlacementMethod::greedy;
  p.params.rank = r;
  p.indices = std::move(picks);
  return p;
}

Placement random_placement(const CandidateSet& candidates, std::size_t q,
                           std::uint64_t seed) {
  const std::size_t k = candidates.size();
  if (q < 1 || q > k) {
    std::ostringstream msg;
    msg << "random_placement: q " << q << " outside [1, " << k << "]";
    throw ConfigError(msg.str());
  }
  std::vector<std::uint32_t> pool = candidates.indices;
  Rng rng(seed);
  for (std::size_t i = 0; i < q; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_index(k - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(q);

  Placement p;
  p.method = PlacementMethod::random;
  p.params.seed = seed;
  p.indices = std::move(pool);
  return p;
}

TrialStatistics trial_statistics(const std::vector<double>& values) {
  if (values.empty()) {
    throw ConfigError("trial_statistics: empty value list");
  }
  TrialStatistics stats;
  stats.trials = values.size();
  stats.per_trial = values;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.std_dev = std::sqrt(ss / static_cast<double>(values.size()));
  return stats;
}

}  // namespace splace

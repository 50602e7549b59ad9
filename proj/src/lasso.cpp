#include "splace/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

namespace {

constexpr double kCoordTol = 1e-9;
constexpr std::size_t kMaxPasses = 10000;

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Coordinate descent in Gram form: minimize
//   0.5 a'Ga - c'a + offset + lambda |a|_1
// where G = Theta'Theta / q and c = Theta'phi / q. Keeping s = G a up to
// date makes a full pass O(r^2) independent of the sensor count, and lets
// fold fits along a lambda path share one Gram matrix.
LassoResult descend(const Eigen::MatrixXd& gram, const Eigen::VectorXd& lin,
                    double offset, double lambda, Eigen::VectorXd start,
                    bool record_objective) {
  const Eigen::Index r = lin.size();
  LassoResult res;
  res.coefficients = std::move(start);
  if (res.coefficients.size() != r) {
    res.coefficients = Eigen::VectorXd::Zero(r);
  }
  Eigen::VectorXd s = gram * res.coefficients;

  for (std::size_t pass = 0; pass < kMaxPasses; ++pass) {
    double max_change = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) {
      const double gii = gram(i, i);
      const double old = res.coefficients[i];
      double next;
      if (gii <= 0.0) {
        next = 0.0;  // zero column: the penalty pins the coefficient
      } else {
        const double rho = lin[i] - s[i] + gii * old;
        next = soft_threshold(rho, lambda) / gii;
      }
      const double change = next - old;
      if (change != 0.0) {
        res.coefficients[i] = next;
        s += gram.col(i) * change;
        max_change = std::max(max_change, std::abs(change));
      }
    }
    ++res.passes;
    if (record_objective) {
      const double obj = 0.5 * res.coefficients.dot(s) -
                         lin.dot(res.coefficients) + offset +
                         lambda * res.coefficients.lpNorm<1>();
      res.objective_history.push_back(obj);
    }
    if (max_change < kCoordTol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace

LassoResult lasso_fit(const MeasurementOperator& op, const Eigen::VectorXd& phi,
                      double lambda) {
  const Eigen::Index q = op.theta.rows();
  if (phi.size() != q) {
    std::ostringstream msg;
    msg << "lasso_fit: measurement length " << phi.size()
        << " != sensor count " << q;
    throw ConfigError(msg.str());
  }
  if (lambda < 0.0) {
    throw ConfigError("lasso_fit: lambda must be nonnegative");
  }
  const double qd = static_cast<double>(q);
  const Eigen::MatrixXd gram = op.theta.transpose() * op.theta / qd;
  const Eigen::VectorXd lin = op.theta.transpose() * phi / qd;
  const double offset = 0.5 * phi.squaredNorm() / qd;
  return descend(gram, lin, offset, lambda, Eigen::VectorXd(), true);
}

double lasso_kkt_violation(const Eigen::MatrixXd& theta, const Eigen::VectorXd& phi,
                           double lambda, const Eigen::VectorXd& alpha) {
  const double qd = static_cast<double>(theta.rows());
  const Eigen::VectorXd grad = theta.transpose() * (phi - theta * alpha) / qd;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) {
      worst = std::max(worst, std::abs(grad[i]) - lambda);
    } else {
      const double sign = alpha[i] > 0.0 ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(grad[i] - lambda * sign));
    }
  }
  return std::max(worst, 0.0);
}

std::vector<double> make_lambda_grid(const Eigen::MatrixXd& theta,
                                     const Eigen::VectorXd& phi,
                                     const LambdaGridSpec& spec) {
  if (spec.count < 1 || !(spec.min_ratio > 0.0) || spec.min_ratio > 1.0) {
    throw ConfigError("make_lambda_grid: bad grid spec");
  }
  const double qd = static_cast<double>(theta.rows());
  const double lambda_max =
      (theta.transpose() * phi).cwiseAbs().maxCoeff() / qd;
  if (lambda_max <= 0.0) {
    return {0.0};  // phi orthogonal to every column; any lambda gives a = 0
  }
  std::vector<double> grid(spec.count);
  if (spec.count == 1) {
    grid[0] = lambda_max;
    return grid;
  }
  const double log_max = std::log(lambda_max);
  const double log_min = std::log(lambda_max * spec.min_ratio);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(spec.count - 1);
    grid[i] = std::exp(log_max + (log_min - log_max) * t);
  }
  return grid;
}

LassoCvResult lasso_cv(const MeasurementOperator& op, const Eigen::VectorXd& phi,
                       int folds, const std::vector<double>& lambda_grid) {
  const Eigen::Index q = op.theta.rows();
  const Eigen::Index r = op.theta.cols();
  if (folds < 2) {
    throw ConfigError("lasso_cv: need at least 2 folds");
  }
  if (q < folds) {
    std::ostringstream msg;
    msg << "lasso_cv: " << q << " measurements cannot fill " << folds << " folds";
    throw ConfigError(msg.str());
  }
  if (lambda_grid.empty()) {
    throw ConfigError("lasso_cv: empty lambda grid");
  }
  for (std::size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
    if (lambda_grid[i] < lambda_grid[i + 1]) {
      throw ConfigError("lasso_cv: lambda grid must be descending");
    }
  }
  const std::size_t n_lambda = lambda_grid.size();

  // per-fold held-out mean squared error, per grid entry
  std::vector<std::vector<double>> fold_err(n_lambda,
                                            std::vector<double>(folds, 0.0));

  for (int f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train, test;
    for (Eigen::Index i = 0; i < q; ++i) {
      ((i % folds) == f ? test : train).push_back(i);
    }
    const auto qt = static_cast<Eigen::Index>(train.size());
    Eigen::MatrixXd theta_tr(qt, r);
    Eigen::VectorXd phi_tr(qt);
    for (Eigen::Index i = 0; i < qt; ++i) {
      theta_tr.row(i) = op.theta.row(train[static_cast<std::size_t>(i)]);
      phi_tr[i] = phi[train[static_cast<std::size_t>(i)]];
    }
    const double qd = static_cast<double>(qt);
    const Eigen::MatrixXd gram = theta_tr.transpose() * theta_tr / qd;
    const Eigen::VectorXd lin = theta_tr.transpose() * phi_tr / qd;

    Eigen::VectorXd warm = Eigen::VectorXd::Zero(r);
    for (std::size_t gi = 0; gi < n_lambda; ++gi) {
      LassoResult fit = descend(gram, lin, 0.0, lambda_grid[gi], warm, false);
      warm = fit.coefficients;
      double err = 0.0;
      for (Eigen::Index i : test) {
        const double resid = phi[i] - op.theta.row(i).dot(fit.coefficients);
        err += resid * resid;
      }
      fold_err[gi][static_cast<std::size_t>(f)] =
          err / static_cast<double>(test.size());
    }
  }

  LassoCvResult out;
  out.cv_error.resize(n_lambda);
  out.cv_se.resize(n_lambda);
  for (std::size_t gi = 0; gi < n_lambda; ++gi) {
    double mean = 0.0;
    for (double e : fold_err[gi]) mean += e;
    mean /= static_cast<double>(folds);
    double ss = 0.0;
    for (double e : fold_err[gi]) ss += (e - mean) * (e - mean);
    const double sd = folds > 1 ? std::sqrt(ss / static_cast<double>(folds - 1)) : 0.0;
    out.cv_error[gi] = mean;
    out.cv_se[gi] = sd / std::sqrt(static_cast<double>(folds));
  }

  out.min_index = 0;
  for (std::size_t gi = 1; gi < n_lambda; ++gi) {
    if (out.cv_error[gi] < out.cv_error[out.min_index]) out.min_index = gi;
  }
  const double bar = out.cv_error[out.min_index] + out.cv_se[out.min_index];
  out.selected_index = out.min_index;
  for (std::size_t gi = 0; gi < n_lambda; ++gi) {  // descending grid: first hit = largest
    if (out.cv_error[gi] <= bar) {
      out.selected_index = gi;
      break;
    }
  }
  out.lambda = lambda_grid[out.selected_index];

  // final fit on all measurements, warm-started down the path
  const double qd = static_cast<double>(q);
  const Eigen::MatrixXd gram = op.theta.transpose() * op.theta / qd;
  const Eigen::VectorXd lin = op.theta.transpose() * phi / qd;
  Eigen::VectorXd warm = Eigen::VectorXd::Zero(r);
  for (std::size_t gi = 0; gi <= out.selected_index; ++gi) {
    warm = descend(gram, lin, 0.0, lambda_grid[gi], warm, false).coefficients;
  }
  out.coefficients = warm;
  return out;
}

ReconstructionReport denoise_pipeline(const PodBasis& basis, const Placement& placement,
                                      const DataMatrix& noisy, int radius,
                                      const LambdaGridSpec& grid_spec, int folds,
                                      const std::vector<std::uint32_t>& probes,
                                      const DataMatrix* reference) {
  if (!noisy.grid) {
    throw ConfigError("denoise_pipeline: data has no grid shape");
  }
  const MeasurementOperator op = make_operator(basis, placement);
  const Eigen::Index m = noisy.cols();
  const auto q = static_cast<Eigen::Index>(placement.indices.size());

  ReconstructionReport report;
  report.method = "lasso";
  report.rank_deficient = op.rank_deficient;
  report.coefficients.resize(basis.rank, m);
  report.fields.resize(noisy.rows(), m);
  report.selected_lambdas.reserve(static_cast<std::size_t>(m));

  Eigen::VectorXd phi(q);
  for (Eigen::Index l = 0; l < m; ++l) {
    const Eigen::VectorXd field = noisy.values.col(l);
    for (Eigen::Index i = 0; i < q; ++i) {
      phi[i] = spatial_mean_filter(field, *noisy.grid,
                                   placement.indices[static_cast<std::size_t>(i)],
                                   radius);
    }
    const std::vector<double> grid = make_lambda_grid(op.theta, phi, grid_spec);
    LassoCvResult cv = lasso_cv(op, phi, folds, grid);
    report.selected_lambdas.push_back(cv.lambda);
    report.coefficients.col(l) = cv.coefficients;
    report.fields.col(l) = basis.modes * cv.coefficients;
  }

  const DataMatrix& truth = reference ? *reference : noisy;
  DataMatrix recon{report.fields, noisy.grid};
  report.e_reconst = reconstruction_error(truth, recon);

  report.probes = probes;
  for (std::uint32_t p : probes) {
    std::vector<double> rec(static_cast<std::size_t>(m)), ref(static_cast<std::size_t>(m));
    for (Eigen::Index l = 0; l < m; ++l) {
      rec[static_cast<std::size_t>(l)] = report.fields(p, l);
      ref[static_cast<std::size_t>(l)] = truth.values(p, l);
    }
    report.rmse_by_probe.push_back(probe_rmse(rec, ref));
  }
  return report;
}

}  // namespace splace

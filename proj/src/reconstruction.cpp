#include "splace/reconstruction.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

MeasurementOperator make_operator(const PodBasis& basis, const Placement& placement) {
  const auto n = static_cast<std::size_t>(basis.modes.rows());
  if (placement.indices.empty()) {
    throw ConfigError("make_operator: empty placement");
  }
  for (std::uint32_t idx : placement.indices) {
    if (idx >= n) {
      std::ostringstream msg;
      msg << "make_operator: placement index " << idx << " outside [0, " << n << ")";
      throw ConfigError(msg.str());
    }
  }
  MeasurementOperator op;
  op.placement = placement;
  const auto q = static_cast<Eigen::Index>(placement.indices.size());
  op.theta.resize(q, basis.rank);
  for (Eigen::Index i = 0; i < q; ++i) {
    op.theta.row(i) = basis.modes.row(placement.indices[static_cast<std::size_t>(i)]);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(op.theta,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-12 * sv[0] : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff && sv[i] > 0.0) {
      inv[i] = 1.0 / sv[i];
      ++rank;
    }
  }
  op.theta_pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  op.effective_rank = rank;
  op.rank_deficient = rank < std::min(op.theta.rows(), op.theta.cols());
  return op;
}

Eigen::VectorXd pinv_coefficients(const MeasurementOperator& op,
                                  const Eigen::VectorXd& y) {
  if (y.size() != op.theta.rows()) {
    std::ostringstream msg;
    msg << "pinv_coefficients: measurement length " << y.size()
        << " != sensor count " << op.theta.rows();
    throw ConfigError(msg.str());
  }
  return op.theta_pinv * y;
}

Eigen::VectorXd reconstruct_field(const PodBasis& basis, const Eigen::VectorXd& a) {
  if (a.size() != basis.rank) {
    std::ostringstream msg;
    msg << "reconstruct_field: coefficient length " << a.size()
        << " != rank " << basis.rank;
    throw ConfigError(msg.str());
  }
  return basis.modes * a;
}

double reconstruction_error(const DataMatrix& x, const DataMatrix& xr) {
  if (x.rows() != xr.rows() || x.cols() != xr.cols()) {
    throw ConfigError("reconstruction_error: shape mismatch");
  }
  const Eigen::Index m = x.cols();
  double sum = 0.0;
  for (Eigen::Index l = 0; l < m; ++l) {
    const double denom = x.values.col(l).squaredNorm();
    if (denom == 0.0) {
      std::ostringstream msg;
      msg << "reconstruction_error: snapshot column " << l << " has zero norm";
      throw DataError(msg.str());
    }
    sum += (x.values.col(l) - xr.values.col(l)).squaredNorm() / denom;
  }
  return sum / static_cast<double>(m);
}

double spatial_mean_filter(const Eigen::VectorXd& field, const GridShape& grid,
                           std::size_t point, int radius) {
  if (grid.points() != static_cast<std::uint64_t>(field.size())) {
    throw ConfigError("spatial_mean_filter: grid shape does not match field length");
  }
  if (point >= static_cast<std::size_t>(field.size())) {
    std::ostringstream msg;
    msg << "spatial_mean_filter: point " << point << " outside [0, "
        << field.size() << ")";
    throw ConfigError(msg.str());
  }
  if (radius < 0) {
    throw ConfigError("spatial_mean_filter: radius must be nonnegative");
  }
  const auto n_h = static_cast<std::int64_t>(grid.n_h);
  const auto n_v = static_cast<std::int64_t>(grid.n_v);
  const std::int64_t row = static_cast<std::int64_t>(point) / n_h;
  const std::int64_t col = static_cast<std::int64_t>(point) % n_h;

  const std::int64_t r0 = std::max<std::int64_t>(0, row - radius);
  const std::int64_t r1 = std::min<std::int64_t>(n_v - 1, row + radius);
  const std::int64_t c0 = std::max<std::int64_t>(0, col - radius);
  const std::int64_t c1 = std::min<std::int64_t>(n_h - 1, col + radius);

  double sum = 0.0;
  for (std::int64_t rr = r0; rr <= r1; ++rr) {
    for (std::int64_t cc = c0; cc <= c1; ++cc) {
      sum += field[rr * n_h + cc];
    }
  }
  return sum / static_cast<double>((r1 - r0 + 1) * (c1 - c0 + 1));
}

double probe_rmse(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw ConfigError("probe_rmse: series length mismatch");
  }
  if (a.empty()) {
    throw ConfigError("probe_rmse: empty series");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

ReconstructionReport pinv_pipeline(const PodBasis& basis, const Placement& placement,
                                   const DataMatrix& data,
                                   const std::vector<std::uint32_t>& probes,
                                   const DataMatrix* reference) {
  const MeasurementOperator op = make_operator(basis, placement);
  const Eigen::Index m = data.cols();
  const auto q = static_cast<Eigen::Index>(placement.indices.size());

  ReconstructionReport report;
  report.method = "pinv";
  report.rank_deficient = op.rank_deficient;
  report.coefficients.resize(basis.rank, m);
  report.fields.resize(data.rows(), m);

  Eigen::VectorXd y(q);
  for (Eigen::Index l = 0; l < m; ++l) {
    for (Eigen::Index i = 0; i < q; ++i) {
      y[i] = data.values(placement.indices[static_cast<std::size_t>(i)], l);
    }
    report.coefficients.col(l) = op.theta_pinv * y;
    report.fields.col(l) = basis.modes * report.coefficients.col(l);
  }

  const DataMatrix& truth = reference ? *reference : data;
  DataMatrix recon{report.fields, data.grid};
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

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

namespace splace {

/// Image shape for data whose spatial points form an n_v x n_h pixel grid.
/// Spatial index j maps to (row, col) = (j / n_h, j % n_h), row-major.
struct GridShape {
  std::uint32_t n_v = 0;  ///< vertical pixel count (rows)
  std::uint32_t n_h = 0;  ///< horizontal pixel count (columns)

  std::uint64_t points() const {
    return static_cast<std::uint64_t>(n_v) * n_h;
  }
  bool operator==(const GridShape&) const = default;
};

/// Snapshot matrix: n spatial points by m snapshots, column l = snapshot l.
struct DataMatrix {
  Eigen::MatrixXd values;  // column-major, one column per snapshot
  std::optional<GridShape> grid;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

}  // namespace splace

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "splace/data_matrix.hpp"

namespace splace {

/// Writes an 8-bit binary PGM of a grid-shaped field. Values map linearly
/// from [lo, hi] onto [0, 255] and clamp outside it; `markers` (spatial
/// indices, e.g. sensor positions) are painted white.
void export_field_image(const Eigen::VectorXd& field, const GridShape& grid,
                        const std::string& path, double lo, double hi,
                        const std::vector<std::uint32_t>& markers = {});

}  // namespace splace

#pragma once

#include <string>

#include "splace/placement.hpp"

namespace splace {

/// Small JSON interchange for placements: method, indices, parameters.
void save_placement(const Placement& p, const std::string& path);
Placement load_placement(const std::string& path);

}  // namespace splace

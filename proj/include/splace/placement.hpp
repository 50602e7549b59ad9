#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splace {

enum class PlacementMethod { clique, greedy, random };

std::string to_string(PlacementMethod m);

/// A selected set of sensor locations: q distinct spatial indices plus the
/// provenance needed to re-run the selection.
struct Placement {
  std::vector<std::uint32_t> indices;
  PlacementMethod method = PlacementMethod::random;

  struct Params {
    double c = 0.0;         // weight threshold (clique method)
    double lambda1 = 0.0;   // reward weight (clique method)
    double lambda2 = 0.0;   // penalty weight (clique method)
    std::uint64_t seed = 0; // random method / annealer seed
    std::int64_t rank = 0;  // truncation rank the selection was based on
  } params;

  std::size_t q() const { return indices.size(); }
};

}  // namespace splace

#pragma once

#include <cstdint>
#include <vector>

#include "splace/graph.hpp"
#include "splace/placement.hpp"
#include "splace/pod.hpp"

namespace splace {

/// Determinant-based greedy selection over the unweighted mode rows.
/// Each step adds the candidate maximizing the D-optimality objective given
/// the rows already picked: det(Theta Theta^T) while the selection has at
/// most r rows, det(Theta^T Theta) beyond that. Ties go to the smallest
/// spatial index; previous picks are never reconsidered. Indices are
/// returned in pick order, so shorter runs are exact prefixes of longer
/// ones.
Placement greedy_determinant_placement(const PodBasis& basis,
                                       const CandidateSet& candidates,
                                       std::size_t q);

/// q distinct candidates by seeded partial Fisher-Yates, in draw order.
Placement random_placement(const CandidateSet& candidates, std::size_t q,
                           std::uint64_t seed);

struct TrialStatistics {
  std::size_t trials = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // population
  std::vector<double> per_trial;
};

TrialStatistics trial_statistics(const std::vector<double>& values);

}  // namespace splace

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "splace/graph.hpp"
#include "splace/placement.hpp"

namespace splace {

/// Binary decision vector x over the graph vertices.
struct BitAssignment {
  std::vector<std::uint8_t> bits;  // entries 0 or 1

  std::size_t size() const { return bits.size(); }
  std::size_t popcount() const;
};

/// Orders assignments by the integer they encode with bit 0 least
/// significant; the tie-break used everywhere a minimum is reported.
bool bits_less(const BitAssignment& a, const BitAssignment& b);

/// Independent-set Hamiltonian over the complement graph:
///   H(x) = -lambda1 * sum_i x_i + lambda2 * sum_{(a,b) in edges} x_a x_b.
/// Every vertex carries the same linear reward and every edge the same
/// quadratic penalty; lambda1 < lambda2 makes any violated edge cost more
/// than the vertex it could add.
struct QuboProblem {
  std::size_t size = 0;
  double lambda1 = 1.0;
  double lambda2 = 2.0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // a < b

  // adjacency of the penalty edges, one bitset row per vertex
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> adjacency;

  const std::uint64_t* row(std::size_t v) const {
    return adjacency.data() + v * words_per_row;
  }
};

QuboProblem build_qubo(const ThresholdGraph& complement_graph,
                       double lambda1 = 1.0, double lambda2 = 2.0);

double energy(const QuboProblem& q, const BitAssignment& x);

struct SolveResult {
  BitAssignment bits;
  double energy = 0.0;
};

/// Ground truth by full enumeration (size <= 24). Ties resolve to the
/// assignment encoding the smallest integer.
SolveResult exhaustive_solve(const QuboProblem& q);

/// Clears violated vertices (largest violation count first, ties to the
/// larger index) until no complement edge has both endpoints set. Feasible
/// input passes through unchanged; the result always has zero penalty.
BitAssignment repair_to_independent_set(const ThresholdGraph& complement_graph,
                                        BitAssignment x);

/// Maps an independent set of the complement back to spatial indices,
/// verifying first that the selected vertices are pairwise adjacent in g_c.
Placement clique_from_solution(const ThresholdGraph& g_c, const BitAssignment& x);

}  // namespace splace

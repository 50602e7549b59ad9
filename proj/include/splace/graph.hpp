#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "splace/pod.hpp"

namespace splace {

/// Hard cap on graph order, mirroring the bit budget of the annealing
/// hardware the problem encoding is sized for.
inline constexpr std::size_t kMaxGraphOrder = 8192;

/// Candidate sensor locations: k distinct spatial indices, ascending.
struct CandidateSet {
  enum class Rule { uniform_stride, explicit_list };
  std::vector<std::uint32_t> indices;
  Rule rule = Rule::uniform_stride;

  std::size_t size() const { return indices.size(); }
};

/// Parallelogram area spanned by u and v: sqrt(|u|^2 |v|^2 - (u.v)^2).
/// Coincides with the cross-product norm for length-3 vectors and extends it
/// to any dimension; zero exactly when u and v are parallel.
double pair_weight(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// k indices uniformly strided across [0, n) (stride floor(n/k)); all of
/// [0, n) when k >= n.
CandidateSet select_candidates(std::size_t n, std::size_t k);

/// Candidate set from an explicit index list (validated, sorted).
CandidateSet explicit_candidates(std::vector<std::uint32_t> indices, std::size_t n);

/// Complete edge-weighted graph over the candidates; weight of edge (a, b)
/// is pair_weight of the candidates' weighted basis rows. Upper-triangular
/// dense storage, k(k-1)/2 entries.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t order, std::vector<std::uint32_t> vertex_map);

  std::size_t order() const { return order_; }
  const std::vector<std::uint32_t>& vertex_map() const { return vertex_map_; }

  double weight(std::size_t a, std::size_t b) const;
  void set_weight(std::size_t a, std::size_t b, double w);
  double max_weight() const;

 private:
  std::size_t index_of(std::size_t a, std::size_t b) const;

  std::size_t order_;
  std::vector<std::uint32_t> vertex_map_;
  std::vector<double> weights_;  // upper triangle, row-major
};

WeightedGraph build_graph(const PodBasis& basis, const CandidateSet& candidates);

/// Unweighted graph obtained by keeping edges with weight strictly above a
/// threshold, or its complement. Adjacency is one bitset row per vertex.
class ThresholdGraph {
 public:
  ThresholdGraph(std::size_t order, double threshold, bool complemented,
                 std::vector<std::uint32_t> vertex_map);

  std::size_t order() const { return order_; }
  double threshold() const { return threshold_; }
  bool complemented() const { return complemented_; }
  const std::vector<std::uint32_t>& vertex_map() const { return vertex_map_; }

  bool has_edge(std::size_t a, std::size_t b) const;
  void add_edge(std::size_t a, std::size_t b);
  std::size_t edge_count() const;

  std::size_t words_per_row() const { return words_per_row_; }
  const std::uint64_t* row(std::size_t v) const {
    return adjacency_.data() + v * words_per_row_;
  }

 private:
  friend ThresholdGraph complement(const ThresholdGraph&);

  std::size_t order_;
  double threshold_;
  bool complemented_;
  std::vector<std::uint32_t> vertex_map_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> adjacency_;
};

/// G_c: edge (a, b) kept iff weight(a, b) > c (strict).
ThresholdGraph threshold_graph(const WeightedGraph& g, double c);

/// Edge-set complement (self-loops stay absent). Rejects input already
/// complemented so a double inversion cannot slip through silently.
ThresholdGraph complement(const ThresholdGraph& g);

/// Clique-size evaluator used during threshold calibration: given G_c,
/// report the size of the clique the solver finds.
using CliqueSizeFn = std::function<std::size_t(const ThresholdGraph& g_c)>;

struct CalibrationResult {
  double c = 0.0;
  std::size_t achieved = 0;
};

/// Bisection over c in [0, max weight] for the largest threshold whose
/// solver-reported clique size still reaches q_target. At most `max_steps`
/// probes after the bracket endpoints; reproducible given a deterministic
/// evaluator. Throws InfeasibleError when even c = 0 falls short.
CalibrationResult calibrate_threshold(const WeightedGraph& g, std::size_t q_target,
                                      const CliqueSizeFn& clique_size,
                                      int max_steps = 32);

}  // namespace splace

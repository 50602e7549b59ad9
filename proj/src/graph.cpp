#include "splace/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

double pair_weight(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) {
    std::ostringstream msg;
    msg << "pair_weight: length mismatch " << u.size() << " vs " << v.size();
    throw ConfigError(msg.str());
  }
  if (u.size() < 1) {
    throw ConfigError("pair_weight: empty vectors");
  }
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double uv = u.dot(v);
  const double radicand = uu * vv - uv * uv;
  return std::sqrt(std::max(radicand, 0.0));  // clamp roundoff negatives
}

CandidateSet select_candidates(std::size_t n, std::size_t k) {
  if (k < 2) {
    throw ConfigError("select_candidates: need at least 2 candidates");
  }
  if (n < 2) {
    throw ConfigError("select_candidates: need at least 2 spatial points");
  }
  CandidateSet set;
  set.rule = CandidateSet::Rule::uniform_stride;
  if (k >= n) {
    set.indices.resize(n);
    for (std::size_t i = 0; i < n; ++i) set.indices[i] = static_cast<std::uint32_t>(i);
    return set;
  }
  const std::size_t stride = n / k;
  set.indices.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    set.indices[i] = static_cast<std::uint32_t>(i * stride);
  }
  return set;
}

CandidateSet explicit_candidates(std::vector<std::uint32_t> indices, std::size_t n) {
  std::sort(indices.begin(), indices.end());
  if (indices.size() < 2) {
    throw ConfigError("explicit_candidates: need at least 2 candidates");
  }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw ConfigError("explicit_candidates: duplicate index");
  }
  if (indices.back() >= n) {
    std::ostringstream msg;
    msg << "explicit_candidates: index " << indices.back() << " outside [0, " << n << ")";
    throw ConfigError(msg.str());
  }
  CandidateSet set;
  set.indices = std::move(indices);
  set.rule = CandidateSet::Rule::explicit_list;
  return set;
}

WeightedGraph::WeightedGraph(std::size_t order, std::vector<std::uint32_t> vertex_map)
    : order_(order), vertex_map_(std::move(vertex_map)) {
  if (order_ < 2) {
    throw ConfigError("WeightedGraph: order must be at least 2");
  }
  if (order_ > kMaxGraphOrder) {
    std::ostringstream msg;
    msg << "WeightedGraph: order " << order_ << " exceeds cap " << kMaxGraphOrder;
    throw ConfigError(msg.str());
  }
  if (vertex_map_.size() != order_) {
    throw ConfigError("WeightedGraph: vertex map size mismatch");
  }
  weights_.assign(order_ * (order_ - 1) / 2, 0.0);
}

std::size_t WeightedGraph::index_of(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  // row a of the strict upper triangle, offset by the a(a+1)/2 skipped cells
  return a * order_ - a * (a + 1) / 2 + (b - a - 1);
}

double WeightedGraph::weight(std::size_t a, std::size_t b) const {
  if (a == b || a >= order_ || b >= order_) {
    throw ConfigError("WeightedGraph::weight: bad vertex pair");
  }
  return weights_[index_of(a, b)];
}

void WeightedGraph::set_weight(std::size_t a, std::size_t b, double w) {
  if (a == b || a >= order_ || b >= order_) {
    throw ConfigError("WeightedGraph::set_weight: bad vertex pair");
  }
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DataError("WeightedGraph::set_weight: weight must be finite and nonnegative");
  }
  weights_[index_of(a, b)] = w;
}

double WeightedGraph::max_weight() const {
  double w = 0.0;
  for (double x : weights_) w = std::max(w, x);
  return w;
}

WeightedGraph build_graph(const PodBasis& basis, const CandidateSet& candidates) {
  const std::size_t k = candidates.size();
  const auto n = static_cast<std::size_t>(basis.weighted_rows.rows());
  for (std::uint32_t idx : candidates.indices) {
    if (idx >= n) {
      std::ostringstream msg;
      msg << "build_graph: candidate " << idx << " outside basis rows [0, " << n << ")";
      throw ConfigError(msg.str());
    }
  }
  WeightedGraph g(k, candidates.indices);

  // Gather candidate rows once; norms and dot products give the Gram-area
  // weight without forming per-pair temporaries.
  Eigen::MatrixXd rows(k, basis.rank);
  for (std::size_t a = 0; a < k; ++a) {
    rows.row(a) = basis.weighted_rows.row(candidates.indices[a]);
  }
  Eigen::VectorXd sq = rows.rowwise().squaredNorm();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double uv = rows.row(a).dot(rows.row(b));
      const double radicand = sq[a] * sq[b] - uv * uv;
      g.set_weight(a, b, std::sqrt(std::max(radicand, 0.0)));
    }
  }
  return g;
}

ThresholdGraph::ThresholdGraph(std::size_t order, double threshold, bool complemented,
                               std::vector<std::uint32_t> vertex_map)
    : order_(order),
      threshold_(threshold),
      complemented_(complemented),
      vertex_map_(std::move(vertex_map)),
      words_per_row_((order + 63) / 64) {
  if (order_ < 1 || order_ > kMaxGraphOrder) {
    throw ConfigError("ThresholdGraph: order out of range");
  }
  if (vertex_map_.size() != order_) {
    throw ConfigError("ThresholdGraph: vertex map size mismatch");
  }
  adjacency_.assign(order_ * words_per_row_, 0);
}

bool ThresholdGraph::has_edge(std::size_t a, std::size_t b) const {
  if (a == b || a >= order_ || b >= order_) return false;
  return (adjacency_[a * words_per_row_ + b / 64] >> (b % 64)) & 1u;
}

void ThresholdGraph::add_edge(std::size_t a, std::size_t b) {
  if (a == b || a >= order_ || b >= order_) {
    throw ConfigError("ThresholdGraph::add_edge: bad vertex pair");
  }
  adjacency_[a * words_per_row_ + b / 64] |= std::uint64_t{1} << (b % 64);
  adjacency_[b * words_per_row_ + a / 64] |= std::uint64_t{1} << (a % 64);
}

std::size_t ThresholdGraph::edge_count() const {
  std::size_t set_bits = 0;
  for (std::uint64_t w : adjacency_) set_bits += static_cast<std::size_t>(__builtin_popcountll(w));
  return set_bits / 2;
}

ThresholdGraph threshold_graph(const WeightedGraph& g, double c) {
  if (!(c >= 0.0)) {
    throw ConfigError("threshold_graph: threshold must be nonnegative");
  }
  ThresholdGraph t(g.order(), c, false, g.vertex_map());
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = a + 1; b < g.order(); ++b) {
      if (g.weight(a, b) > c) t.add_edge(a, b);
    }
  }
  return t;
}

ThresholdGraph complement(const ThresholdGraph& g) {
  if (g.complemented()) {
    throw ConfigError("complement: graph is already complemented");
  }
  ThresholdGraph out(g.order(), g.threshold(), true, g.vertex_map());
  const std::size_t words = g.words_per_row_;
  for (std::size_t v = 0; v < g.order(); ++v) {
    for (std::size_t w = 0; w < words; ++w) {
      out.adjacency_[v * words + w] = ~g.adjacency_[v * words + w];
    }
    // clear the self-loop and the ragged tail beyond the last vertex
    out.adjacency_[v * words + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    const std::size_t tail = g.order() % 64;
    if (tail != 0) {
      out.adjacency_[v * words + words - 1] &= (std::uint64_t{1} << tail) - 1;
    }
  }
  return out;
}

CalibrationResult calibrate_threshold(const WeightedGraph& g, std::size_t q_target,
                                      const CliqueSizeFn& clique_size, int max_steps) {
  if (q_target < 1 || q_target > g.order()) {
    throw ConfigError("calibrate_threshold: q_target outside [1, order]");
  }

  const double w_max = g.max_weight();
  const std::size_t at_top = clique_size(threshold_graph(g, w_max));
  if (at_top >= q_target) {
    return CalibrationResult{w_max, at_top};
  }
  const std::size_t at_zero = clique_size(threshold_graph(g, 0.0));
  if (at_zero < q_target) {
    std::ostringstream msg;
    msg << "calibrate_threshold: target clique size " << q_target
        << " unreachable; maximum achievable found was " << at_zero;
    throw InfeasibleError(msg.str());
  }

  double lo = 0.0;            // feasible
  double hi = w_max;          // infeasible
  std::size_t lo_size = at_zero;
  for (int step = 0; step < max_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t size = clique_size(threshold_graph(g, mid));
    if (size >= q_target) {
      lo = mid;
      lo_size = size;
    } else {
      hi = mid;
    }
  }
  return CalibrationResult{lo, lo_size};
}

}  // namespace splace

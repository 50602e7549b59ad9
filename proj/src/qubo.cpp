#include "splace/qubo.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

std::size_t BitAssignment::popcount() const {
  std::size_t n = 0;
  for (std::uint8_t b : bits) n += b;
  return n;
}

bool bits_less(const BitAssignment& a, const BitAssignment& b) {
  // integer order with bit 0 least significant: compare from the top end
  const std::size_t n = std::max(a.bits.size(), b.bits.size());
  for (std::size_t i = n; i-- > 0;) {
    const std::uint8_t av = i < a.bits.size() ? a.bits[i] : 0;
    const std::uint8_t bv = i < b.bits.size() ? b.bits[i] : 0;
    if (av != bv) return av < bv;
  }
  return false;
}

QuboProblem build_qubo(const ThresholdGraph& complement_graph,
                       double lambda1, double lambda2) {
  if (!complement_graph.complemented()) {
    throw ConfigError("build_qubo: expected the complement graph");
  }
  if (!(lambda1 > 0.0) || !(lambda1 < lambda2)) {
    std::ostringstream msg;
    msg << "build_qubo: need 0 < lambda1 < lambda2 so a violated edge always "
           "costs more than the vertex it admits (got lambda1=" << lambda1
        << ", lambda2=" << lambda2 << ")";
    throw ConfigError(msg.str());
  }
  QuboProblem q;
  q.size = complement_graph.order();
  q.lambda1 = lambda1;
  q.lambda2 = lambda2;
  q.words_per_row = complement_graph.words_per_row();
  q.adjacency.assign(complement_graph.row(0),
                     complement_graph.row(0) + q.size * q.words_per_row);
  for (std::size_t a = 0; a < q.size; ++a) {
    for (std::size_t b = a + 1; b < q.size; ++b) {
      if (complement_graph.has_edge(a, b)) {
        q.edges.emplace_back(static_cast<std::uint32_t>(a),
                             static_cast<std::uint32_t>(b));
      }
    }
  }
  return q;
}

double energy(const QuboProblem& q, const BitAssignment& x) {
  if (x.size() != q.size) {
    std::ostringstream msg;
    msg << "energy: assignment length " << x.size() << " != problem size " << q.size;
    throw ConfigError(msg.str());
  }
  std::int64_t selected = 0;
  for (std::uint8_t b : x.bits) selected += b;
  std::int64_t violated = 0;
  for (const auto& [a, b] : q.edges) {
    violated += x.bits[a] & x.bits[b];
  }
  return -q.lambda1 * static_cast<double>(selected) +
         q.lambda2 * static_cast<double>(violated);
}

SolveResult exhaustive_solve(const QuboProblem& q) {
  if (q.size > 24) {
    throw ConfigError("exhaustive_solve: size > 24 would enumerate too many states");
  }
  if (q.size == 0) {
    throw ConfigError("exhaustive_solve: empty problem");
  }

  std::vector<std::uint32_t> adj(q.size, 0);
  for (const auto& [a, b] : q.edges) {
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }

  // Gray-code walk: each step flips one bit, so the selected-vertex and
  // violated-edge counts update in O(1).
  std::uint32_t state = 0;
  std::int64_t selected = 0;
  std::int64_t violated = 0;
  double best_energy = 0.0;   // the all-zero state
  std::uint32_t best_state = 0;

  const std::uint64_t total = std::uint64_t{1} << q.size;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint32_t mask = 1u << bit;
    const auto pairs = std::popcount(adj[bit] & state);
    if (state & mask) {
      state ^= mask;
      --selected;
      violated -= pairs;
    } else {
      state ^= mask;
      ++selected;
      violated += pairs;
    }
    const double e = -q.lambda1 * static_cast<double>(selected) +
                     q.lambda2 * static_cast<double>(violated);
    if (e < best_energy || (e == best_energy && state < best_state)) {
      best_energy = e;
      best_state = state;
    }
  }

  SolveResult res;
  res.bits.bits.resize(q.size);
  for (std::size_t v = 0; v < q.size; ++v) {
    res.bits.bits[v] = (best_state >> v) & 1u;
  }
  res.energy = best_energy;
  return res;
}

BitAssignment repair_to_independent_set(const ThresholdGraph& complement_graph,
                                        BitAssignment x) {
  if (!complement_graph.complemented()) {
    throw ConfigError("repair_to_independent_set: expected the complement graph");
  }
  const std::size_t k = complement_graph.order();
  if (x.size() != k) {
    throw ConfigError("repair_to_independent_set: assignment length mismatch");
  }
  const std::size_t words = complement_graph.words_per_row();

  std::vector<std::uint64_t> state(words, 0);
  for (std::size_t v = 0; v < k; ++v) {
    if (x.bits[v]) state[v / 64] |= std::uint64_t{1} << (v % 64);
  }
  std::vector<std::int32_t> viol(k, 0);
  for (std::size_t v = 0; v < k; ++v) {
    if (!x.bits[v]) continue;
    const std::uint64_t* row = complement_graph.row(v);
    int count = 0;
    for (std::size_t w = 0; w < words; ++w) {
      count += std::popcount(row[w] & state[w]);
    }
    viol[v] = count;
  }

  for (;;) {
    std::int32_t worst = 0;
    std::size_t worst_v = 0;
    for (std::size_t v = 0; v < k; ++v) {
      if (x.bits[v] && viol[v] >= worst && viol[v] > 0) {  // ties -> larger index
        worst = viol[v];
        worst_v = v;
      }
    }
    if (worst == 0) break;

    x.bits[worst_v] = 0;
    state[worst_v / 64] &= ~(std::uint64_t{1} << (worst_v % 64));
    viol[worst_v] = 0;
    const std::uint64_t* row = complement_graph.row(worst_v);
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t m = row[w] & state[w];
      while (m) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
        m &= m - 1;
        --viol[j];
      }
    }
  }
  return x;
}

Placement clique_from_solution(const ThresholdGraph& g_c, const BitAssignment& x) {
  if (g_c.complemented()) {
    throw ConfigError("clique_from_solution: expected the thresholded graph, not its complement");
  }
  if (x.size() != g_c.order()) {
    throw ConfigError("clique_from_solution: assignment length mismatch");
  }
  std::vector<std::size_t> vertices;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (x.bits[v]) vertices.push_back(v);
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g_c.has_edge(vertices[i], vertices[j])) {
        std::ostringstream msg;
        msg << "clique_from_solution: vertices " << vertices[i] << " and "
            << vertices[j] << " are not adjacent; solution was not a valid "
               "independent set of the complement";
        throw InfeasibleError(msg.str());
      }
    }
  }
  Placement p;
  p.method = PlacementMethod::clique;
  p.params.c = g_c.threshold();
  p.indices.reserve(vertices.size());
  for (std::size_t v : vertices) p.indices.push_back(g_c.vertex_map()[v]);
  std::sort(p.indices.begin(), p.indices.end());
  return p;
}

}  // namespace splace

#include "splace/anneal.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "splace/errors.hpp"
#include "splace/rng.hpp"

namespace splace {

namespace {

struct ReplicaState {
  std::vector<std::uint8_t> bits;
  std::vector<std::uint64_t> words;     // bits packed for popcount scans
  std::vector<std::int32_t> viol;       // set neighbors per vertex
  std::int64_t selected = 0;
  std::int64_t violated = 0;

  void toggle(const QuboProblem& q, std::size_t i) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (bits[i]) {
      bits[i] = 0;
      words[i / 64] ^= mask;
      --selected;
      violated -= viol[i];
    } else {
      bits[i] = 1;
      words[i / 64] ^= mask;
      ++selected;
      violated += viol[i];
    }
    const std::int32_t delta = bits[i] ? 1 : -1;
    const std::uint64_t* row = q.row(i);
    for (std::size_t w = 0; w < q.words_per_row; ++w) {
      std::uint64_t m = row[w];
      while (m) {
        const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
        m &= m - 1;
        viol[j] += delta;
      }
    }
  }

  double exact_energy(const QuboProblem& q) const {
    return -q.lambda1 * static_cast<double>(selected) +
           q.lambda2 * static_cast<double>(violated);
  }
};

}  // namespace

AnnealSchedule default_schedule(const QuboProblem& q, std::uint64_t seed) {
  AnnealSchedule s;
  s.temp_start = 2.0 * q.lambda2;
  s.temp_end = 0.01 * q.lambda1;
  s.seed = seed;
  return s;
}

SolveResult anneal(const QuboProblem& q, const AnnealSchedule& schedule) {
  if (schedule.sweeps < 1 || schedule.replicas < 1) {
    throw ConfigError("anneal: sweeps and replicas must be at least 1");
  }
  if (!(schedule.temp_end > 0.0) || !(schedule.temp_end < schedule.temp_start)) {
    throw ConfigError("anneal: need 0 < temp_end < temp_start");
  }
  const std::size_t k = q.size;
  if (k == 0) {
    throw ConfigError("anneal: empty problem");
  }

  const double cooling = schedule.sweeps > 1
                             ? std::pow(schedule.temp_end / schedule.temp_start,
                                        1.0 / static_cast<double>(schedule.sweeps - 1))
                             : 1.0;

  BitAssignment best_bits;
  double best_energy = 0.0;
  bool have_best = false;

  for (std::size_t replica = 0; replica < schedule.replicas; ++replica) {
    Rng rng(schedule.seed + replica);

    ReplicaState st;
    st.bits.assign(k, 0);
    st.words.assign(q.words_per_row, 0);
    st.viol.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (rng.next_u64() & 1u) {
        // setting bit i: neighbors already set gain a violation each
        const std::uint64_t* row = q.row(i);
        std::int32_t count = 0;
        for (std::size_t w = 0; w < q.words_per_row; ++w) {
          count += std::popcount(row[w] & st.words[w]);
        }
        st.viol[i] = count;
        st.toggle(q, i);
      }
    }
    // viol entries of still-unset vertices were never initialized above;
    // rebuild them all from the packed state in one pass.
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint64_t* row = q.row(i);
      std::int32_t count = 0;
      for (std::size_t w = 0; w < q.words_per_row; ++w) {
        count += std::popcount(row[w] & st.words[w]);
      }
      st.viol[i] = count;
    }

    double replica_best = st.exact_energy(q);
    std::vector<std::uint8_t> replica_best_bits = st.bits;

    double temp = schedule.temp_start;
    for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
      const double inv_temp = 1.0 / temp;
      for (std::size_t step = 0; step < k; ++step) {
        const auto i = static_cast<std::size_t>(rng.next_index(k));
        const double delta =
            st.bits[i] ? q.lambda1 - q.lambda2 * st.viol[i]
                       : -q.lambda1 + q.lambda2 * st.viol[i];
        bool accept;
        if (delta <= 0.0) {
          accept = true;
        } else {
          accept = rng.next_double() < std::exp(-delta * inv_temp);
        }
        if (accept) {
          st.toggle(q, i);
          const double e = st.exact_energy(q);
          if (e < replica_best) {
            replica_best = e;
            replica_best_bits = st.bits;
          }
        }
      }
      temp *= cooling;
    }

    BitAssignment candidate{std::move(replica_best_bits)};
    if (!have_best || replica_best < best_energy ||
        (replica_best == best_energy && bits_less(candidate, best_bits))) {
      best_energy = replica_best;
      best_bits = std::move(candidate);
      have_best = true;
    }
  }

  SolveResult res;
  res.energy = energy(q, best_bits);  // recomputed from the bits
  res.bits = std::move(best_bits);
  return res;
}

}  // namespace splace

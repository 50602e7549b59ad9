#pragma once

#include <cstdint>

#include "splace/qubo.hpp"

namespace splace {

/// Simulated-annealing run parameters. One sweep proposes `size` single-bit
/// flips; temperature cools geometrically from temp_start to temp_end over
/// the sweeps. Replicas are independent restarts, each on its own generator
/// stream (seed + replica index), merged by minimum energy.
struct AnnealSchedule {
  std::size_t sweeps = 10000;
  double temp_start = 4.0;
  double temp_end = 0.01;
  std::size_t replicas = 8;
  std::uint64_t seed = 0;
};

/// Default schedule for a problem: hot enough at the start to flip a
/// penalized pair, cold enough at the end to freeze (2*lambda2 down to
/// 0.01*lambda1).
AnnealSchedule default_schedule(const QuboProblem& q, std::uint64_t seed);

/// Best assignment seen across all replicas under single-bit-flip
/// Metropolis dynamics. Deterministic for a fixed seed: proposals draw one
/// index per step and one uniform only when the move is uphill, all through
/// the pinned generator in rng.hpp. The returned energy is recomputed from
/// the bits, not accumulated.
SolveResult anneal(const QuboProblem& q, const AnnealSchedule& schedule);

}  // namespace splace

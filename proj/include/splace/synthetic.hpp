#pragma once

#include <cstdint>

#include "splace/data_matrix.hpp"

namespace splace {

/// Parameters of the synthetic traveling-wave dataset: K mode pairs riding
/// a common convection speed over an n_v x n_h grid, plus white noise.
struct SyntheticSpec {
  GridShape grid{64, 64};
  std::size_t snapshots = 256;
  std::size_t modes = 4;       // traveling mode pairs; clean rank <= 2*modes
  double speed = 1.0;          // cells advected per snapshot
  double wavelength = 32.0;    // cells, fundamental spatial period
  double amplitude = 1.0;
  double noise_sigma = 0.0;    // stddev relative to amplitude
  std::uint64_t seed = 0;
};

/// Vortex-street-like snapshot matrix: each mode j is a traveling wave
/// sin(k_j x - w_j t + phase(y)) under a wake envelope, with the phase
/// flipped across the centerline so vortices alternate sides. The time
/// dependence of every mode separates into a sin/cos pair, so the clean
/// field has exact rank <= 2*modes; noise is seeded white Gaussian.
/// Deterministic per spec; snapshots repeat exactly after
/// wavelength/speed steps when that period is integral.
DataMatrix generate_vortex_street(const SyntheticSpec& spec);

}  // namespace splace

#include "splace/synthetic.hpp"

#include <cmath>

#include "splace/errors.hpp"
#include "splace/rng.hpp"

namespace splace {

DataMatrix generate_vortex_street(const SyntheticSpec& spec) {
  if (spec.grid.n_v < 2 || spec.grid.n_h < 2 || spec.snapshots < 1 ||
      spec.modes < 1 || !(spec.speed > 0.0) || !(spec.wavelength > 0.0) ||
      !(spec.amplitude > 0.0) || spec.noise_sigma < 0.0) {
    throw ConfigError("generate_vortex_street: invalid spec");
  }
  const auto n_v = static_cast<Eigen::Index>(spec.grid.n_v);
  const auto n_h = static_cast<Eigen::Index>(spec.grid.n_h);
  const Eigen::Index n = n_v * n_h;
  const auto m = static_cast<Eigen::Index>(spec.snapshots);
  const auto k_modes = static_cast<Eigen::Index>(spec.modes);
  constexpr double pi = 3.14159265358979323846;

  // Wake geometry: signal confined to a band around the centerline, onset a
  // little downstream of the left edge (the "cylinder" position).
  const double center = 0.5 * static_cast<double>(n_v - 1);
  const double band = static_cast<double>(n_v) / 6.0;
  const double onset_x = static_cast<double>(n_h) / 8.0;
  const double onset_ramp = static_cast<double>(n_h) / 32.0;

  // Spatial sin/cos pair per mode; column t of the clean field is a linear
  // combination of these 2K vectors, which pins the clean rank.
  Eigen::MatrixXd spatial(n, 2 * k_modes);
  for (Eigen::Index j = 0; j < k_modes; ++j) {
    const double kappa = 2.0 * pi * static_cast<double>(j + 1) / spec.wavelength;
    const double amp = spec.amplitude / static_cast<double>(j + 1);
    const double offset = (j % 2 == 0 ? -0.5 : 0.5) * band;
    for (Eigen::Index y = 0; y < n_v; ++y) {
      const double dy = (static_cast<double>(y) - (center + offset)) / band;
      const double env_y = std::exp(-dy * dy);
      const double phase_flip = static_cast<double>(y) > center ? pi : 0.0;
      for (Eigen::Index x = 0; x < n_h; ++x) {
        const double onset =
            1.0 / (1.0 + std::exp(-(static_cast<double>(x) - onset_x) / onset_ramp));
        const double arg = kappa * static_cast<double>(x) + phase_flip;
        const double weight = amp * env_y * onset;
        spatial(y * n_h + x, 2 * j) = weight * std::sin(arg);
        spatial(y * n_h + x, 2 * j + 1) = weight * std::cos(arg);
      }
    }
  }

  Eigen::MatrixXd temporal(2 * k_modes, m);
  for (Eigen::Index t = 0; t < m; ++t) {
    // advected distance folded into one wavelength keeps equal phases
    // bit-identical across exact periods
    const double shift = std::fmod(spec.speed * static_cast<double>(t), spec.wavelength);
    for (Eigen::Index j = 0; j < k_modes; ++j) {
      const double kappa = 2.0 * pi * static_cast<double>(j + 1) / spec.wavelength;
      // sin(kx - k*shift + phase) = sin(..)cos(k*shift) - cos(..)sin(k*shift)
      temporal(2 * j, t) = std::cos(kappa * shift);
      temporal(2 * j + 1, t) = -std::sin(kappa * shift);
    }
  }

  DataMatrix out;
  out.grid = spec.grid;
  out.values = spatial * temporal;

  if (spec.noise_sigma > 0.0) {
    Rng rng(derive_seed(spec.seed, "synthetic/noise"));
    const double sigma = spec.noise_sigma * spec.amplitude;
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) {
        out.values(r, c) += sigma * rng.next_normal();
      }
    }
  }
  return out;
}

}  // namespace splace

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace splace {

// All randomness in this project flows through this wrapper. The engine is
// std::mt19937_64, whose output sequence is fixed by the C++ standard, and
// every derived quantity (doubles, bounded indices, normals) is computed here
// with explicit arithmetic instead of std::*_distribution, whose results vary
// between standard libraries. A seed therefore reproduces bit-identical
// streams on any platform, and a port only has to reimplement this file.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1): top 53 bits of the raw draw scaled by 2^-53.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_open_double() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform index in [0, n) via the 128-bit multiply-shift reduction.
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Standard normal via Box-Muller (two fresh uniforms per call, no cache).
  double next_normal() {
    const double u1 = next_open_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Splits a master seed into independent per-stage seeds. Stages are named
/// (e.g. "noise", "random/q=32/trial=7") so any stage can be re-run in
/// isolation without replaying the whole experiment.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
  return splitmix64(master ^ fnv1a64(tag));
}

}  // namespace splace

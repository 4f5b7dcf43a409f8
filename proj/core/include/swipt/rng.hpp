#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace swipt {

/// Derives an independent stream seed from a master seed and a path of
/// integer labels. Used to give every node / purpose its own RNG stream so
/// that e.g. adding a node never perturbs the draws of existing nodes.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Deterministic random source. Uniform doubles are produced directly from
/// the 64-bit engine output, Gaussians via Box-Muller, so the draw sequence
/// does not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// +1 or -1 with equal probability.
  int sign() { return (eng_() >> 63) ? 1 : -1; }

  /// Standard normal.
  double gaussian();

  /// Circularly-symmetric complex Gaussian with total variance `variance`.
  std::complex<double> cgaussian(double variance);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swipt

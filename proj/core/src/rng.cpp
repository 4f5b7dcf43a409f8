#include "swipt/rng.hpp"

#include <cmath>
#include <numbers>

namespace swipt {

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master;
  std::uint64_t out = splitmix64(s);
  for (std::uint64_t v : path) {
    s ^= v + 0x9E3779B97F4A7C15ull + (s << 6) + (s >> 2);
    out = splitmix64(s);
  }
  return out;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1-u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> Rng::cgaussian(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = gaussian();
  const double im = gaussian();
  return {s * re, s * im};
}

}  // namespace swipt

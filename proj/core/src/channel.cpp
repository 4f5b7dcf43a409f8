#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>

namespace swipt {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

double path_loss_gain(double distance_m, const ChannelParams& params) {
  params.validate();
  if (!(distance_m > 0.0)) throw std::invalid_argument("distance_m must be > 0");
  const double d0 = params.reference_distance_m;
  const double g0 = std::pow(kSpeedOfLight / (4.0 * std::numbers::pi * params.carrier_hz * d0), 2.0);
  return g0 * std::pow(d0 / distance_m, params.path_loss_exponent);
}

std::complex<double> draw_channel(double distance_m, const ChannelParams& params, Rng& rng) {
  const double amp = std::sqrt(path_loss_gain(distance_m, params));
  const double k = params.rician_k;
  const double lambda = kSpeedOfLight / params.carrier_hz;
  const double los_phase = -2.0 * std::numbers::pi * distance_m / lambda;
  const std::complex<double> los =
      std::sqrt(k / (k + 1.0)) * std::polar(1.0, los_phase);
  const std::complex<double> nlos = rng.cgaussian(1.0 / (k + 1.0));
  return amp * (los + nlos);
}

std::complex<double> received_sample(const ActivityState& state,
                                     std::span<const std::int8_t> symbols,
                                     std::span<const std::complex<double>> gains,
                                     double p_t_watts, const NoiseParams& noise, Rng& rng) {
  if (symbols.size() != gains.size() || state.n_nodes != static_cast<int>(gains.size()))
    throw std::invalid_argument("dimension mismatch");
  std::complex<double> sum{0.0, 0.0};
  for (int n = 0; n < state.n_nodes; ++n) {
    if (state.active(n)) sum += gains[n] * static_cast<double>(symbols[n]);
  }
  return std::sqrt(p_t_watts) * sum + rng.cgaussian(noise.sigma2);
}

}  // namespace swipt

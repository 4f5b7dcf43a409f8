#include "swipt/psf.hpp"

#include <cmath>

namespace swipt {

double snr_mod(double d0, double rho, const NoiseParams& noise) {
  if (d0 < 0.0) throw std::invalid_argument("d0 must be >= 0");
  if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must be in (0,1]");
  if (std::isinf(d0)) return kInfiniteDistance;
  const double denom = noise.delta2 + rho * noise.sigma2;
  if (denom == 0.0) return d0 > 0.0 ? kInfiniteDistance : 0.0;
  const double half = 0.5 * d0;
  return half * half * rho / denom;
}

PsfDecision psf_from_distance(double d0, const NoiseParams& noise, const ReliabilityConfig& cfg) {
  cfg.validate();
  if (d0 < 0.0) throw std::invalid_argument("d0 must be >= 0");
  if (std::isinf(d0)) return {cfg.rho_min, d0, true};

  const double s = cfg.snr_min_linear;
  const double half2 = 0.25 * d0 * d0;
  const double denom = half2 - s * noise.sigma2;
  if (denom <= 0.0) return {1.0, d0, false};
  const double required = s * noise.delta2 / denom;
  if (required > 1.0) return {1.0, d0, false};
  return {std::max(required, cfg.rho_min), d0, true};
}

double harvested_power_instant(double rho, double y_abs2, double eta) {
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must be in [0,1]");
  return (1.0 - rho) * eta * y_abs2;
}

double mean_harvested_closed_form(double rho_const,
                                  std::span<const std::complex<double>> gains,
                                  std::span<const NodeProfile> profiles,
                                  double p_t_watts, double sigma2, double eta) {
  if (rho_const < 0.0 || rho_const > 1.0) throw std::invalid_argument("rho must be in [0,1]");
  if (gains.size() != profiles.size()) throw std::invalid_argument("dimension mismatch");
  double sum = sigma2;
  for (std::size_t n = 0; n < gains.size(); ++n)
    sum += p_t_watts * std::norm(gains[n]) * duty_cycle(profiles[n]);
  return (1.0 - rho_const) * eta * sum;
}

double harvested_power_nonlinear(double rho, double y_abs2, const NonlinearHarvestParams& params) {
  params.validate();
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must be in [0,1]");
  const double x = (1.0 - rho) * y_abs2;
  const double e = std::exp(params.psi * params.phi);
  const double sigmoid = 1.0 / (1.0 + std::exp(-params.psi * (x - params.phi)));
  return (params.varphi * (1.0 + e) * sigmoid - params.varphi) / (e * params.T);
}

double average_snr(double rho, std::span<const std::complex<double>> gains,
                   std::span<const NodeProfile> profiles, double p_t_watts,
                   const NoiseParams& noise) {
  if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must be in (0,1]");
  if (gains.size() != profiles.size()) throw std::invalid_argument("dimension mismatch");
  double signal = 0.0;
  for (std::size_t n = 0; n < gains.size(); ++n)
    signal += std::norm(gains[n]) * duty_cycle(profiles[n]);
  return rho * p_t_watts * signal / (rho * noise.sigma2 + noise.delta2);
}

double instantaneous_snr(double rho, const ActivityState& state,
                         std::span<const std::int8_t> symbols,
                         std::span<const std::complex<double>> gains,
                         double p_t_watts, const NoiseParams& noise) {
  if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must be in (0,1]");
  if (symbols.size() != gains.size() || state.n_nodes != static_cast<int>(gains.size()))
    throw std::invalid_argument("dimension mismatch");
  std::complex<double> sum{0.0, 0.0};
  for (int n = 0; n < state.n_nodes; ++n)
    if (state.active(n)) sum += gains[n] * static_cast<double>(symbols[n]);
  return rho * p_t_watts * std::norm(sum) / (rho * noise.sigma2 + noise.delta2);
}

}  // namespace swipt

#pragma once

#include <complex>
#include <span>
#include <stdexcept>

#include "swipt/channel.hpp"
#include "swipt/constellation.hpp"
#include "swipt/traffic.hpp"

namespace swipt {

/// Detection-reliability settings and harvester efficiency.
struct ReliabilityConfig {
  double snr_min_linear = 20.0;  // 13 dB worst-case detection SNR
  double rho_min = 1e-2;
  double eta = 0.5;

  void validate() const {
    if (!(snr_min_linear > 0.0)) throw std::invalid_argument("snr_min_linear must be > 0");
    if (!(rho_min > 0.0) || rho_min > 1.0) throw std::invalid_argument("rho_min must be in (0,1]");
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
  }
};

/// A power-splitting decision for one symbol interval (or block).
struct PsfDecision {
  double rho = 1.0;
  double d0 = 0.0;       ///< the minimum distance that produced rho
  bool feasible = false;  ///< reliability satisfiable with rho <= 1
};

/// Sigmoidal harvesting-circuit parameters.
struct NonlinearHarvestParams {
  double varphi;    ///< watts
  double psi;       ///< 1/watts
  double phi;       ///< watts
  double T;         ///< symbol duration, seconds

  void validate() const {
    if (!(varphi > 0.0) || !(psi > 0.0) || !(phi > 0.0) || !(T > 0.0))
      throw std::invalid_argument("nonlinear harvest parameters must be > 0");
  }
};

/// Worst-case detection SNR (0.5*d0)^2 * rho / (delta2 + rho*sigma2).
/// Returns +inf when the denominator vanishes or d0 is infinite.
double snr_mod(double d0, double rho, const NoiseParams& noise);

/// Smallest rho in [rho_min, 1] satisfying snr_mod >= snr_min_linear, which
/// maximizes the harvested power. When even rho = 1 cannot satisfy the
/// constraint, returns rho = 1 with feasible = false. An infinite d0 (no
/// detection constraint) yields rho_min.
PsfDecision psf_from_distance(double d0, const NoiseParams& noise, const ReliabilityConfig& cfg);

/// Per-symbol harvested power (1-rho) * eta * |y|^2.
double harvested_power_instant(double rho, double y_abs2, double eta);

/// Closed-form mean harvested power for a constant rho:
/// (1-rho) * eta * (sum_n P_t |h_n|^2 * duty_n + sigma2).
double mean_harvested_closed_form(double rho_const,
                                  std::span<const std::complex<double>> gains,
                                  std::span<const NodeProfile> profiles,
                                  double p_t_watts, double sigma2, double eta);

/// Sigmoidal harvesting model evaluated at one symbol.
double harvested_power_nonlinear(double rho, double y_abs2, const NonlinearHarvestParams& params);

/// Long-run average SNR after the splitter.
double average_snr(double rho, std::span<const std::complex<double>> gains,
                   std::span<const NodeProfile> profiles, double p_t_watts,
                   const NoiseParams& noise);

/// SNR of one symbol interval given the realized activity and symbols.
double instantaneous_snr(double rho, const ActivityState& state,
                         std::span<const std::int8_t> symbols,
                         std::span<const std::complex<double>> gains,
                         double p_t_watts, const NoiseParams& noise);

}  // namespace swipt

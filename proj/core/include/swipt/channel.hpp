#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "swipt/rng.hpp"
#include "swipt/traffic.hpp"

namespace swipt {

/// Propagation parameters. Path loss is free-space gain at the reference
/// distance, then a power-law decay with the given exponent.
struct ChannelParams {
  double rician_k = 3.0;
  double path_loss_exponent = 2.0;
  double carrier_hz = 900e6;
  double reference_distance_m = 1.0;

  void validate() const {
    if (rician_k < 0.0) throw std::invalid_argument("rician_k must be >= 0");
    if (!(path_loss_exponent > 0.0)) throw std::invalid_argument("path_loss_exponent must be > 0");
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier_hz must be > 0");
    if (!(reference_distance_m > 0.0)) throw std::invalid_argument("reference_distance_m must be > 0");
  }
};

/// Receiver-side noise variances in watts: sigma2 at the antenna, delta2
/// injected by the power splitter in front of the detector.
struct NoiseParams {
  double sigma2 = 1e-14;    // -110 dBm
  double delta2 = 3.1623e-11;  // -75 dBm

  void validate() const {
    if (!(sigma2 > 0.0) || !(delta2 > 0.0))
      throw std::invalid_argument("noise variances must be > 0");
  }
};

/// Static channel realization of one scenario. `h` is what the receiver
/// knows (the channel mean under imperfect CSI); `h_true` is the realized
/// channel the received signal actually passes through. They coincide when
/// theta2 is all zero.
struct ChannelSet {
  std::vector<std::complex<double>> h;
  std::vector<double> theta2;
  std::vector<std::complex<double>> h_true;

  std::span<const std::complex<double>> known_gains() const { return h; }
  std::span<const std::complex<double>> true_gains() const { return h_true; }
};

/// Power gain of the path-loss model at distance d.
double path_loss_gain(double distance_m, const ChannelParams& params);

/// Draws one quasi-static Rician channel coefficient. Magnitude statistics
/// are unit-mean-power Rician scaled by sqrt(path loss); the line-of-sight
/// component carries the deterministic propagation phase -2*pi*d/lambda.
std::complex<double> draw_channel(double distance_m, const ChannelParams& params, Rng& rng);

/// One received complex baseband sample: sqrt(P_t) * sum_n h_n a_n + w,
/// with w circularly-symmetric Gaussian of variance sigma2.
std::complex<double> received_sample(const ActivityState& state,
                                     std::span<const std::int8_t> symbols,
                                     std::span<const std::complex<double>> gains,
                                     double p_t_watts, const NoiseParams& noise, Rng& rng);

}  // namespace swipt

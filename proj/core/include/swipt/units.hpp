#pragma once

#include <cmath>
#include <limits>

namespace swipt {

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

inline double watts_to_dbm(double w) {
  return w > 0.0 ? 10.0 * std::log10(w / 1e-3) : -std::numeric_limits<double>::infinity();
}

/// dB relative to 1 microwatt.
inline double watts_to_dbuw(double w) {
  return w > 0.0 ? 10.0 * std::log10(w / 1e-6) : -std::numeric_limits<double>::infinity();
}

}  // namespace swipt

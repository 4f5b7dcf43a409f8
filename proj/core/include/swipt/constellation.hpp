#pragma once

#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "swipt/traffic.hpp"

namespace swipt {

/// Enumerating all activity states is refused beyond this many nodes.
inline constexpr int kMaxEnumeratedNodes = 16;

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One joint-constellation point together with the activity state that
/// produced it. Values are in sqrt-watt units (they carry sqrt(P_t)).
struct LabeledPoint {
  std::complex<double> value;
  std::uint32_t label = 0;  // activity bit mask
};

struct LabeledConstellation {
  std::vector<LabeledPoint> points;
  int n_nodes = 0;
};

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// All 2^k sign combinations of sqrt(P_t) * sum over active nodes of (+-h_n),
/// labeled with the state. The all-idle state yields the single point 0.
std::vector<LabeledPoint> points_for_state(const ActivityState& state,
                                           std::span<const std::complex<double>> gains,
                                           double p_t_watts);

/// Concatenation of points_for_state over the given states. Equal complex
/// values from different labels are both kept; labels drive the imperfect-CSI
/// distance shrinkage.
LabeledConstellation union_constellation(std::span<const ActivityState> states,
                                         std::span<const std::complex<double>> gains,
                                         double p_t_watts);

/// Union over all 2^N activity states (the constant-PSF scheme's
/// constellation). Refuses N > 16.
LabeledConstellation baseline_constellation(std::span<const std::complex<double>> gains,
                                            double p_t_watts);

/// Minimum Euclidean distance over all pairs of distinct point values;
/// coincident points collapse to one regardless of label. Returns +inf for
/// fewer than two distinct values.
double min_distance(const LabeledConstellation& c);

/// Minimum distance under channel uncertainty: each pair's distance is
/// shrunk by 4 * sum of theta[n] over the nodes in the XOR of the two
/// labels, clipped at zero. `theta` must be in the same units as the point
/// values (i.e. scaled by sqrt(P_t) when the points are).
double min_distance_imperfect_csi(const LabeledConstellation& c, std::span<const double> theta);

}  // namespace swipt

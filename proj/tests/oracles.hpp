#pragma once

// Independent brute-force reference implementations used to cross-check the
// library. Deliberately naive: correctness over speed, no shared code with
// the mainline paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "swipt/constellation.hpp"

namespace oracles {

/// O(P^2) minimum distance over distinct point values (coincident values are
/// one point, so they never produce a zero pair).
inline double brute_min_distance(const swipt::LabeledConstellation& c) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = c.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].value == pts[j].value) continue;
      best = std::min(best, std::abs(pts[i].value - pts[j].value));
    }
  return best;
}

/// O(P^2) imperfect-CSI distance: shrink each distinct-value pair by
/// 4 * sum of theta over the label XOR, clipped at zero.
inline double brute_min_distance_csi(const swipt::LabeledConstellation& c,
                                     const std::vector<double>& theta) {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = c.points;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].value == pts[j].value) continue;
      double shrink = 0.0;
      const std::uint32_t diff = pts[i].label ^ pts[j].label;
      for (int n = 0; n < c.n_nodes; ++n)
        if ((diff >> n) & 1u) shrink += 4.0 * theta[n];
      best = std::min(best, std::max(std::abs(pts[i].value - pts[j].value) - shrink, 0.0));
    }
  return best;
}

/// Distinct complex values in a constellation (exact comparison).
inline std::size_t distinct_values(const swipt::LabeledConstellation& c) {
  std::vector<std::complex<double>> vals;
  for (const auto& p : c.points) vals.push_back(p.value);
  std::sort(vals.begin(), vals.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals.size();
}

}  // namespace oracles

#include "swipt/constellation.hpp"

#include <algorithm>
#include <cmath>

namespace swipt {

std::vector<LabeledPoint> points_for_state(const ActivityState& state,
                                           std::span<const std::complex<double>> gains,
                                           double p_t_watts) {
  if (state.n_nodes != static_cast<int>(gains.size()))
    throw std::invalid_argument("dimension mismatch");
  std::vector<int> active;
  for (int n = 0; n < state.n_nodes; ++n)
    if (state.active(n)) active.push_back(n);
  const int k = static_cast<int>(active.size());
  if (k > kMaxEnumeratedNodes) throw SizeLimitError("too many active nodes to enumerate");

  const double amp = std::sqrt(p_t_watts);
  std::vector<LabeledPoint> pts;
  pts.reserve(std::size_t{1} << k);
  for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
    std::complex<double> v{0.0, 0.0};
    for (int j = 0; j < k; ++j) {
      const double sgn = ((signs >> j) & 1u) ? 1.0 : -1.0;
      v += sgn * gains[active[j]];
    }
    pts.push_back({amp * v, state.bits});
  }
  return pts;
}

LabeledConstellation union_constellation(std::span<const ActivityState> states,
                                         std::span<const std::complex<double>> gains,
                                         double p_t_watts) {
  if (states.empty()) throw std::invalid_argument("state list must be nonempty");
  LabeledConstellation c;
  c.n_nodes = static_cast<int>(gains.size());
  for (const ActivityState& s : states) {
    auto pts = points_for_state(s, gains, p_t_watts);
    c.points.insert(c.points.end(), pts.begin(), pts.end());
  }
  return c;
}

LabeledConstellation baseline_constellation(std::span<const std::complex<double>> gains,
                                            double p_t_watts) {
  const int n = static_cast<int>(gains.size());
  if (n < 1) throw std::invalid_argument("need at least one node");
  if (n > kMaxEnumeratedNodes) throw SizeLimitError("baseline constellation limited to 16 nodes");
  std::vector<ActivityState> states;
  states.reserve(std::size_t{1} << n);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) states.push_back({bits, n});
  return union_constellation(states, gains, p_t_watts);
}

namespace {

/// Sorted copy with exact duplicate values removed. Coincident points are one
/// constellation point; the first label in sort order survives.
std::vector<LabeledPoint> dedup_sorted(const LabeledConstellation& c) {
  std::vector<LabeledPoint> pts = c.points;
  std::sort(pts.begin(), pts.end(), [](const LabeledPoint& a, const LabeledPoint& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    return a.label < b.label;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const LabeledPoint& a, const LabeledPoint& b) {
                          return a.value == b.value;
                        }),
            pts.end());
  return pts;
}

}  // namespace

double min_distance(const LabeledConstellation& c) {
  std::vector<LabeledPoint> pts = dedup_sorted(c);
  if (pts.size() < 2) return kInfiniteDistance;
  // Plane sweep over points sorted by real part: only pairs closer than the
  // current best along the real axis can improve it.
  double best2 = kInfiniteDistance;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[j].value.real() - pts[i].value.real();
      if (dx * dx >= best2) break;
      const double dy = pts[j].value.imag() - pts[i].value.imag();
      const double d2 = dx * dx + dy * dy;
      if (d2 < best2) best2 = d2;
    }
    if (best2 == 0.0) break;
  }
  return std::sqrt(best2);
}

double min_distance_imperfect_csi(const LabeledConstellation& c, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != c.n_nodes)
    throw std::invalid_argument("theta length must equal node count");
  for (double t : theta)
    if (t < 0.0) throw std::invalid_argument("theta must be >= 0");

  std::vector<LabeledPoint> pts = dedup_sorted(c);
  if (pts.size() < 2) return kInfiniteDistance;

  // Precompute the shrinkage sum per label-XOR mask lazily.
  std::vector<double> shrink_cache(std::size_t{1} << c.n_nodes, -1.0);
  auto shrink_for = [&](std::uint32_t mask) {
    double& s = shrink_cache[mask];
    if (s < 0.0) {
      s = 0.0;
      for (int n = 0; n < c.n_nodes; ++n)
        if ((mask >> n) & 1u) s += 4.0 * theta[n];
    }
    return s;
  };

  double best = kInfiniteDistance;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = std::abs(pts[j].value - pts[i].value);
      const double dmod = std::max(d - shrink_for(pts[i].label ^ pts[j].label), 0.0);
      if (dmod < best) best = dmod;
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

}  // namespace swipt

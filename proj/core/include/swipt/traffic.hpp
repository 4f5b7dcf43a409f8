#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "swipt/rng.hpp"

namespace swipt {

/// Per-node traffic parameters: in every free symbol interval the node starts
/// a new packet of L symbols with probability p.
struct NodeProfile {
  double p = 0.1;  ///< packet start probability per symbol interval, in (0,1]
  int L = 20;      ///< packet length in symbols, >= 1

  void validate() const {
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("NodeProfile.p must be in (0,1]");
    if (L < 1) throw std::invalid_argument("NodeProfile.L must be >= 1");
  }
};

/// Fraction of symbol intervals a node is transmitting, pL/(pL + (1-p)).
double duty_cycle(const NodeProfile& profile);

/// Average transmit power of a node, P_t * duty cycle.
double consumed_power(const NodeProfile& profile, double p_t_watts);

/// Activity bits of one node over the last L symbol intervals. The window is
/// what the per-node transition rule inspects; a run counter disambiguates
/// the all-ones window, where back-to-back packets make the packet boundary
/// underivable from the window alone.
class NodeHistory {
 public:
  explicit NodeHistory(int packet_length);

  void push(int bit);

  int length() const { return L_; }
  /// Most recent bit (the activity at m-1).
  int last() const { return ring_[head_]; }
  /// Bit l intervals back; l = 1 is the most recent.
  int bit_from_end(int l) const;

  /// True while a packet is in flight (trailing 1-run not at a multiple of L).
  bool mid_packet() const { return last() == 1 && run_ % L_ != 0; }
  /// True in the interval right after a packet completed (node free again).
  bool at_boundary() const { return last() == 0 || run_ % L_ == 0; }

  std::uint64_t trailing_run() const { return run_; }

 private:
  int L_;
  std::vector<std::uint8_t> ring_;
  int head_ = 0;
  std::uint64_t run_ = 0;  // length of the trailing 1-run, may exceed L
};

/// Which nodes transmit in one symbol interval, as a bit mask.
struct ActivityState {
  std::uint32_t bits = 0;
  int n_nodes = 0;

  bool active(int n) const { return (bits >> n) & 1u; }
  int count() const { return __builtin_popcount(bits); }
  bool operator==(const ActivityState&) const = default;
};

/// Activity and BPSK symbols of all nodes over a span of symbol intervals.
/// Symbol is nonzero iff the node is active in that interval.
class TrafficTrace {
 public:
  TrafficTrace(int n_nodes, int n_symbols)
      : n_(n_nodes), m_(n_symbols), state_bits_(n_symbols, 0), syms_(static_cast<std::size_t>(n_nodes) * n_symbols, 0) {}

  int n_nodes() const { return n_; }
  int length() const { return m_; }

  ActivityState state(int m) const { return {state_bits_[m], n_}; }
  std::int8_t symbol(int n, int m) const { return syms_[static_cast<std::size_t>(m) * n_ + n]; }
  /// Symbols of all nodes in interval m (0 for idle nodes).
  std::span<const std::int8_t> symbols(int m) const {
    return {syms_.data() + static_cast<std::size_t>(m) * n_, static_cast<std::size_t>(n_)};
  }

  void set(int n, int m, int bit, std::int8_t sym);

 private:
  int n_, m_;
  std::vector<std::uint32_t> state_bits_;
  std::vector<std::int8_t> syms_;
};

struct StepResult {
  int bit = 0;           ///< activity in this interval
  std::int8_t symbol = 0;  ///< BPSK symbol, 0 when idle
};

/// Advances one node by one symbol interval: deterministic continuation while
/// a packet is in flight, otherwise a fresh packet starts with probability p.
/// Pushes the produced bit into the history.
StepResult step_node(NodeHistory& history, const NodeProfile& profile, Rng& rng);

/// Generates the activity/symbol trace of all nodes over n_symbols intervals,
/// starting from the all-idle state. Each node consumes its own derived RNG
/// stream, so the trace of node n depends only on (profiles[n], seed, n).
TrafficTrace generate_trace(std::span<const NodeProfile> profiles, int n_symbols, std::uint64_t seed);

/// Per-node transition probability Pr(next | prev, history); `prev` must be
/// the final bit of `history`. Implements the four cases: 0->0 gives 1-p,
/// 0->1 gives p, 1->0 gives 1-p at a packet boundary and 0 mid-packet,
/// 1->1 gives 1 mid-packet and p at a boundary.
double transition_probability(const NodeProfile& profile, const NodeHistory& history, int prev, int next);

/// Joint transition probability: product of the per-node probabilities.
double state_transition_probability(std::span<const NodeProfile> profiles,
                                    std::span<const NodeHistory> histories,
                                    const ActivityState& s_prev, const ActivityState& s_next);

}  // namespace swipt

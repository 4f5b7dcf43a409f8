#include "swipt/traffic.hpp"

#include <cassert>

namespace swipt {

double duty_cycle(const NodeProfile& profile) {
  profile.validate();
  const double pl = profile.p * profile.L;
  return pl / (pl + (1.0 - profile.p));
}

double consumed_power(const NodeProfile& profile, double p_t_watts) {
  if (!(p_t_watts > 0.0)) throw std::invalid_argument("p_t_watts must be > 0");
  return p_t_watts * duty_cycle(profile);
}

NodeHistory::NodeHistory(int packet_length) : L_(packet_length), ring_(packet_length, 0) {
  if (packet_length < 1) throw std::invalid_argument("packet_length must be >= 1");
  head_ = L_ - 1;
}

void NodeHistory::push(int bit) {
  head_ = (head_ + 1) % L_;
  ring_[head_] = static_cast<std::uint8_t>(bit);
  run_ = bit ? run_ + 1 : 0;
}

int NodeHistory::bit_from_end(int l) const {
  assert(l >= 1 && l <= L_);
  return ring_[(head_ - (l - 1) + L_) % L_];
}

void TrafficTrace::set(int n, int m, int bit, std::int8_t sym) {
  if (bit)
    state_bits_[m] |= 1u << n;
  else
    state_bits_[m] &= ~(1u << n);
  syms_[static_cast<std::size_t>(m) * n_ + n] = sym;
}

StepResult step_node(NodeHistory& history, const NodeProfile& profile, Rng& rng) {
  StepResult r;
  if (history.mid_packet()) {
    r.bit = 1;
  } else {
    r.bit = rng.bernoulli(profile.p) ? 1 : 0;
  }
  if (r.bit) r.symbol = static_cast<std::int8_t>(rng.sign());
  history.push(r.bit);
  return r;
}

TrafficTrace generate_trace(std::span<const NodeProfile> profiles, int n_symbols, std::uint64_t seed) {
  if (n_symbols < 1) throw std::invalid_argument("n_symbols must be >= 1");
  const int n = static_cast<int>(profiles.size());
  TrafficTrace trace(n, n_symbols);
  for (int node = 0; node < n; ++node) {
    profiles[node].validate();
    Rng rng(derive_seed(seed, {0x74726166u, static_cast<std::uint64_t>(node)}));
    NodeHistory history(profiles[node].L);
    for (int m = 0; m < n_symbols; ++m) {
      const StepResult r = step_node(history, profiles[node], rng);
      trace.set(node, m, r.bit, r.symbol);
    }
  }
  return trace;
}

double transition_probability(const NodeProfile& profile, const NodeHistory& history, int prev, int next) {
  if (history.last() != prev)
    throw std::invalid_argument("history inconsistent with prev bit");
  const double p = profile.p;
  if (prev == 0) return next == 0 ? 1.0 - p : p;
  // The rule sees only the stored window: fewer than L trailing ones means the
  // packet cannot have ended; an all-ones window is a possible boundary.
  if (history.trailing_run() < static_cast<std::uint64_t>(history.length()))
    return next == 1 ? 1.0 : 0.0;
  return next == 0 ? 1.0 - p : p;
}

double state_transition_probability(std::span<const NodeProfile> profiles,
                                    std::span<const NodeHistory> histories,
                                    const ActivityState& s_prev, const ActivityState& s_next) {
  const int n = static_cast<int>(profiles.size());
  if (histories.size() != profiles.size() || s_prev.n_nodes != n || s_next.n_nodes != n)
    throw std::invalid_argument("dimension mismatch");
  double prob = 1.0;
  for (int node = 0; node < n; ++node) {
    prob *= transition_probability(profiles[node], histories[node],
                                   s_prev.active(node) ? 1 : 0, s_next.active(node) ? 1 : 0);
    if (prob == 0.0) break;
  }
  return prob;
}

}  // namespace swipt

#include <doctest.h>

#include <cmath>
#include <vector>

#include "checks.hpp"
#include "swipt/traffic.hpp"

using namespace swipt;

namespace {

NodeHistory history_of(int L, const std::vector<int>& bits) {
  NodeHistory h(L);
  for (int b : bits) h.push(b);
  return h;
}

}  // namespace

TEST_CASE("duty cycle and consumed power") {
  CHECK(rel_close(duty_cycle({0.01, 20}), 0.2 / 1.19, 1e-14));
  CHECK(abs_close(consumed_power({0.01, 20}, 0.1), 0.016807, 1e-6));
  CHECK(consumed_power({1.0, 7}, 0.1) == 0.1);  // always transmitting
  // The 0.9 * P_t consumption threshold is crossed just above p = 0.3 at L = 20.
  CHECK(consumed_power({0.30, 20}, 1.0) < 0.9);
  CHECK(consumed_power({0.35, 20}, 1.0) > 0.9);
  CHECK_THROWS_AS(duty_cycle({1.5, 20}), std::invalid_argument);
  CHECK_THROWS_AS(consumed_power({0.1, 20}, 0.0), std::invalid_argument);
}

TEST_CASE("step_node forces continuation mid-packet") {
  Rng rng(7);
  NodeHistory h = history_of(20, {1, 1, 1, 1, 1});
  CHECK(h.mid_packet());
  for (int i = 0; i < 15; ++i) {
    const StepResult r = step_node(h, {0.1, 20}, rng);
    CHECK(r.bit == 1);
    CHECK((r.symbol == 1 || r.symbol == -1));
  }
  CHECK(h.at_boundary());  // 20 ones pushed in total
}

TEST_CASE("step_node with p = 0 never starts a packet") {
  // NodeProfile requires p > 0 elsewhere; step_node itself imposes no floor.
  Rng rng(3);
  NodeHistory h(20);
  for (int i = 0; i < 1000; ++i) CHECK(step_node(h, {0.0, 20}, rng).bit == 0);
}

TEST_CASE("new packet after a completed one starts with probability p") {
  Rng rng(11);
  int starts = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    NodeHistory h(20);
    for (int i = 0; i < 20; ++i) h.push(1);
    starts += step_node(h, {0.1, 20}, rng).bit;
  }
  CHECK(abs_close(static_cast<double>(starts) / trials, 0.1, 0.01));
}

TEST_CASE("transition probability four cases") {
  const NodeProfile prof{0.1, 20};
  NodeHistory idle(20);
  CHECK(transition_probability(prof, idle, 0, 0) == 0.9);
  CHECK(rel_close(transition_probability(prof, idle, 0, 1), 0.1, 1e-14));

  NodeHistory mid = history_of(20, {1, 1, 1, 1, 1});
  CHECK(transition_probability(prof, mid, 1, 0) == 0.0);
  CHECK(transition_probability(prof, mid, 1, 1) == 1.0);

  NodeHistory done = history_of(20, std::vector<int>(20, 1));
  CHECK(rel_close(transition_probability(prof, done, 1, 1), 0.1, 1e-14));
  CHECK(transition_probability(prof, done, 1, 0) == 0.9);

  CHECK_THROWS_AS(transition_probability(prof, idle, 1, 0), std::invalid_argument);
}

TEST_CASE("an all-ones window is always a possible boundary") {
  // With 25 straight ones the stored 20-bit window is saturated: the rule
  // cannot tell whether a packet just ended, so both branches stay open.
  const NodeProfile prof{0.1, 20};
  NodeHistory h = history_of(20, std::vector<int>(25, 1));
  CHECK(transition_probability(prof, h, 1, 0) == 0.9);
  CHECK(rel_close(transition_probability(prof, h, 1, 1), 0.1, 1e-14));
}

TEST_CASE("joint transition probability") {
  const std::vector<NodeProfile> profs{{0.1, 20}, {0.2, 20}};
  std::vector<NodeHistory> hists{NodeHistory(20), NodeHistory(20)};
  CHECK(rel_close(state_transition_probability(profs, hists, {0, 2}, {0, 2}), 0.72, 1e-14));

  // A mid-packet stop annihilates the product.
  hists[0] = history_of(20, {1, 1, 1});
  CHECK(state_transition_probability(profs, hists, {0b01, 2}, {0b00, 2}) == 0.0);
}

TEST_CASE("successor probabilities sum to one") {
  // Brute-force enumeration over all 2^N successors from simulated histories.
  for (int n = 1; n <= 6; ++n) {
    std::vector<NodeProfile> profs;
    for (int i = 0; i < n; ++i) profs.push_back({0.05 + 0.1 * i, 3 + 2 * i});
    Rng rng(100 + n);
    std::vector<NodeHistory> hists;
    for (int i = 0; i < n; ++i) hists.emplace_back(profs[i].L);
    for (int step = 0; step < 200; ++step) {
      for (int i = 0; i < n; ++i) step_node(hists[i], profs[i], rng);
      std::uint32_t prev = 0;
      for (int i = 0; i < n; ++i)
        if (hists[i].last()) prev |= 1u << i;
      double total = 0.0;
      for (std::uint32_t next = 0; next < (1u << n); ++next)
        total += state_transition_probability(profs, hists, {prev, n}, {next, n});
      CHECK(abs_close(total, 1.0, 1e-12));
    }
  }
}

TEST_CASE("generate_trace saturated traffic") {
  const std::vector<NodeProfile> profs{{1.0, 3}};
  const TrafficTrace t = generate_trace(profs, 9, 42);
  for (int m = 0; m < 9; ++m) {
    CHECK(t.state(m).bits == 1u);
    CHECK(t.symbol(0, m) != 0);
  }
}

TEST_CASE("generate_trace determinism and node independence") {
  const std::vector<NodeProfile> one{{0.1, 20}};
  const std::vector<NodeProfile> two{{0.1, 20}, {0.3, 5}};
  const TrafficTrace a = generate_trace(one, 500, 9);
  const TrafficTrace b = generate_trace(one, 500, 9);
  const TrafficTrace c = generate_trace(two, 500, 9);
  for (int m = 0; m < 500; ++m) {
    CHECK(a.state(m).bits == b.state(m).bits);
    CHECK(a.symbol(0, m) == b.symbol(0, m));
    // Adding a node does not perturb node 0's stream.
    CHECK(a.state(m).active(0) == c.state(m).active(0));
    CHECK(a.symbol(0, m) == c.symbol(0, m));
  }
}

TEST_CASE("empirical activity fraction matches the duty cycle") {
  const std::vector<NodeProfile> profs{{0.01, 20}};
  const TrafficTrace t = generate_trace(profs, 1000000, 1);
  long active = 0;
  for (int m = 0; m < t.length(); ++m) active += t.state(m).count();
  CHECK(abs_close(static_cast<double>(active) / t.length(), 0.168, 0.01));
}

TEST_CASE("every 1-run in a trace is a multiple of L") {
  const std::vector<NodeProfile> profs{{0.3, 7}, {0.5, 3}};
  const TrafficTrace t = generate_trace(profs, 5000, 77);
  for (int n = 0; n < 2; ++n) {
    int run = 0;
    for (int m = 0; m < t.length(); ++m) {
      if (t.state(m).active(n)) {
        ++run;
      } else {
        CHECK(run % profs[n].L == 0);
        run = 0;
      }
    }
  }
}

TEST_CASE("trace symbols are zero exactly when idle") {
  const std::vector<NodeProfile> profs{{0.2, 4}};
  const TrafficTrace t = generate_trace(profs, 2000, 5);
  for (int m = 0; m < t.length(); ++m)
    CHECK((t.symbol(0, m) != 0) == t.state(m).active(0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(NodeHistory(0), std::invalid_argument);
  CHECK_THROWS_AS(generate_trace(std::vector<NodeProfile>{{0.1, 20}}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_trace(std::vector<NodeProfile>{{0.0, 20}}, 10, 1), std::invalid_argument);
}

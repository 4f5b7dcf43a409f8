#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "checks.hpp"
#include "swipt/sim.hpp"

using namespace swipt;

namespace {

ScenarioConfig small_config(int nodes, int reps, int symbols) {
  ScenarioConfig cfg;
  cfg.nodes = nodes;
  cfg.profiles.assign(nodes, {0.1, 20});
  cfg.repetitions = reps;
  cfg.symbols = symbols;
  return cfg;
}

bool metrics_equal(const RunMetrics& a, const RunMetrics& b) {
  if (a.policies.size() != b.policies.size()) return false;
  for (std::size_t i = 0; i < a.policies.size(); ++i) {
    const PolicyMetrics& x = a.policies[i];
    const PolicyMetrics& y = b.policies[i];
    if (x.name != y.name || x.mean_harvest_w != y.mean_harvest_w || x.mean_rho != y.mean_rho ||
        x.violation_fraction != y.violation_fraction || x.mean_d0 != y.mean_d0 ||
        x.prediction_errors != y.prediction_errors || x.symbols != y.symbols)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("scenario runs are deterministic") {
  const ScenarioConfig cfg = small_config(4, 1, 200);
  CHECK(metrics_equal(run_scenario(cfg, 7), run_scenario(cfg, 7)));
  CHECK_FALSE(metrics_equal(run_scenario(cfg, 7), run_scenario(cfg, 8)));
}

TEST_CASE("aggregates are independent of the worker count") {
  ScenarioConfig cfg = small_config(3, 10, 150);
  cfg.threads = 1;
  const RunMetrics serial = run_many(cfg);
  cfg.threads = 4;
  CHECK(metrics_equal(serial, run_many(cfg)));
}

TEST_CASE("deployment draw") {
  const ScenarioConfig cfg = small_config(4, 1, 10);
  const ScenarioDraw a = draw_scenario(cfg, 3);
  const ScenarioDraw b = draw_scenario(cfg, 3);
  for (int n = 0; n < 4; ++n) {
    CHECK(a.distances_m[n] >= 3.0);
    CHECK(a.distances_m[n] <= 10.0);
    CHECK(a.distances_m[n] == b.distances_m[n]);
    CHECK(a.h_known[n] == b.h_known[n]);
    CHECK(a.h_known[n] == a.h_true[n]);  // perfect CSI
    CHECK(a.theta[n] == 0.0);
  }
  // Node draws are independent of the node count.
  const ScenarioDraw c = draw_scenario(small_config(6, 1, 10), 3);
  for (int n = 0; n < 4; ++n) CHECK(a.h_known[n] == c.h_known[n]);

  ScenarioConfig csi = small_config(2, 1, 10);
  csi.csi_alpha = 0.01;
  const ScenarioDraw d = draw_scenario(csi, 3);
  for (int n = 0; n < 2; ++n) {
    CHECK(d.theta[n] == std::sqrt(0.01 * std::norm(d.h_known[n])));
    CHECK(d.h_true[n] != d.h_known[n]);
  }
}

TEST_CASE("matched-seed policy ordering") {
  // At p = 0.1 no state is ever filtered, so the per-symbol constellations
  // nest: genie within sbp within baseline. The harvest order follows.
  ScenarioConfig cfg = small_config(4, 40, 300);
  const RunMetrics m = run_many(cfg);
  const double base = m.policy("baseline").mean_harvest_w;
  const double sbp = m.policy("sbp").mean_harvest_w;
  const double genie = m.policy("genie").mean_harvest_w;
  CHECK(base <= sbp);
  CHECK(sbp <= genie);
  CHECK(m.policy("sbp").prediction_errors == 0);
}

TEST_CASE("genie on an almost-idle trace harvests the noise floor") {
  ScenarioConfig cfg = small_config(2, 1, 200000);
  cfg.profiles.assign(2, {1e-12, 20});
  cfg.policies = {{PolicyKind::Genie}};
  const RunMetrics m = run_scenario(cfg, 5);
  const double expected = (1.0 - 0.01) * cfg.reliability.eta * cfg.noise.sigma2;
  CHECK(rel_close(m.policy("genie").mean_harvest_w, expected, 0.02));
  CHECK(m.policy("genie").mean_rho == 0.01);
  CHECK(m.policy("genie").violation_fraction == 0.0);
}

TEST_CASE("reported dB values agree with the watt values") {
  const RunMetrics m = run_many(small_config(4, 5, 200));
  for (const PolicyMetrics& pm : m.policies) {
    CHECK(std::abs(pm.mean_harvest_dbuw - 10.0 * std::log10(pm.mean_harvest_w / 1e-6)) <= 1e-9);
    CHECK(pm.violation_fraction >= 0.0);
    CHECK(pm.violation_fraction <= 1.0);
    CHECK(pm.mean_harvest_w >= 0.0);
  }
}

TEST_CASE("average active nodes") {
  const std::vector<NodeProfile> dilute(5, {0.01, 20});
  CHECK(abs_close(average_active_nodes(dilute), 0.168 * 5, 5 * 1e-3));
  const std::vector<NodeProfile> saturated(3, {1.0, 4});
  CHECK(average_active_nodes(saturated) == 3.0);

  // Monte Carlo oracle: mean popcount over a long trace.
  const std::vector<NodeProfile> mixed{{0.1, 20}, {0.25, 8}};
  const TrafficTrace t = generate_trace(mixed, 1000000, 9);
  long active = 0;
  for (int m = 0; m < t.length(); ++m) active += t.state(m).count();
  CHECK(rel_close(static_cast<double>(active) / t.length(), average_active_nodes(mixed), 0.01));
}

TEST_CASE("joint detection picks the nearest point, ties to the lowest index") {
  LabeledConstellation c;
  c.n_nodes = 1;
  c.points.push_back({{0.0, 0.0}, 0});
  c.points.push_back({{2.0, 0.0}, 1});
  CHECK(jd_detect({0.0, 0.0}, c, 1.0).label == 0);
  CHECK(jd_detect({1.9, 0.0}, c, 1.0).label == 1);
  CHECK(jd_detect({1.0, 0.0}, c, 1.0).label == 0);  // equidistant: lowest index
  // The constellation is compared after sqrt(rho) scaling.
  CHECK(jd_detect({0.2, 0.0}, c, 0.25).label == 0);
  CHECK(jd_detect({0.8, 0.0}, c, 0.25).label == 1);
  CHECK_THROWS_AS(jd_detect({0.0, 0.0}, LabeledConstellation{}, 1.0), std::invalid_argument);
}

TEST_CASE("joint detection is error-free at the reliability target") {
  // 10^6 symbols through the full receive chain at SNR_mod = 20: the
  // worst-case pairwise error rate is about 1e-10, so no state errors occur.
  const std::vector<std::complex<double>> gains{{1.0, 0.0}, {0.4, 0.0}};
  const double p_t = 1.0;
  const LabeledConstellation c = baseline_constellation(gains, p_t);
  const double d0 = min_distance(c);
  const NoiseParams noise{1e-4, 0.25 * d0 * d0 * 0.2 / 20.0 - 0.2 * 1e-4};
  const PsfDecision dec = psf_from_distance(d0, noise, ReliabilityConfig{});
  REQUIRE(dec.feasible);
  REQUIRE(snr_mod(d0, dec.rho, noise) >= 20.0 - 1e-9);

  Rng rng(77);
  long errors = 0;
  for (int m = 0; m < 1000000; ++m) {
    const std::uint32_t state = static_cast<std::uint32_t>(rng.uniform() * 4.0);
    std::complex<double> signal{0.0, 0.0};
    for (int n = 0; n < 2; ++n)
      if ((state >> n) & 1u) signal += std::sqrt(p_t) * gains[n] * static_cast<double>(rng.sign());
    const std::complex<double> y = signal + rng.cgaussian(noise.sigma2);
    const std::complex<double> post = std::sqrt(dec.rho) * y + rng.cgaussian(noise.delta2);
    if (jd_detect(post, c, dec.rho).label != state) ++errors;
  }
  CHECK(errors == 0);
}

TEST_CASE("sweeps apply one axis and keep seeds matched") {
  ScenarioConfig base = small_config(2, 2, 50);

  const ScenarioConfig n4 = apply_axis(base, SweepAxis::Nodes, 4);
  CHECK(n4.nodes == 4);
  CHECK(n4.profiles.size() == 4);

  const ScenarioConfig p2 = apply_axis(base, SweepAxis::P, 0.2);
  for (const NodeProfile& p : p2.profiles) CHECK(p.p == 0.2);

  const ScenarioConfig l5 = apply_axis(base, SweepAxis::L, 5);
  for (const NodeProfile& p : l5.profiles) CHECK(p.L == 5);

  base.policies = {{PolicyKind::Bbp}};
  const ScenarioConfig d3 = apply_axis(base, SweepAxis::D, 3);
  CHECK(d3.policies[0].block_len == 3);

  const ScenarioConfig a = apply_axis(base, SweepAxis::Alpha, 1e-3);
  CHECK(a.csi_alpha == 1e-3);

  CHECK_THROWS_AS(apply_axis(base, SweepAxis::Nodes, 2.5), std::invalid_argument);

  base.policies = {{PolicyKind::Baseline}};
  const std::vector<double> values{0.05, 0.1};
  const SweepResult result = sweep(base, SweepAxis::P, values);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].value == 0.05);
  CHECK(result.rows[0].metrics.seed == base.seed);
  CHECK(result.rows[1].metrics.seed == base.seed);
}

TEST_CASE("config validation rejects inconsistent scenarios") {
  ScenarioConfig cfg = small_config(3, 1, 10);
  cfg.profiles.pop_back();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(3, 1, 10);
  cfg.policies.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config(3, 1, 10);
  cfg.distance_min_m = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

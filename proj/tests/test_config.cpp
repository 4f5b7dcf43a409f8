#include <doctest.h>

#include <string>

#include "checks.hpp"
#include "swipt/config.hpp"

using namespace swipt;

TEST_CASE("an empty config yields the default scenario") {
  const ScenarioConfig cfg = parse_config_text("{}");
  CHECK(cfg.nodes == 6);
  REQUIRE(cfg.profiles.size() == 6);
  for (const NodeProfile& p : cfg.profiles) {
    CHECK(p.p == 0.1);
    CHECK(p.L == 20);
  }
  CHECK(rel_close(cfg.p_t_w, 0.1, 1e-12));            // 20 dBm
  CHECK(rel_close(cfg.noise.sigma2, 1e-14, 1e-12));   // -110 dBm
  CHECK(rel_close(cfg.noise.delta2, 3.1623e-11, 1e-4));  // -75 dBm
  CHECK(cfg.reliability.eta == 0.5);
  CHECK(cfg.reliability.snr_min_linear == 20.0);
  CHECK(cfg.reliability.rho_min == 1e-2);
  CHECK(cfg.channel.rician_k == 3.0);
  CHECK(cfg.channel.path_loss_exponent == 2.0);
  CHECK(cfg.channel.carrier_hz == 900e6);
  CHECK(cfg.distance_min_m == 3.0);
  CHECK(cfg.distance_max_m == 10.0);
  CHECK(cfg.csi_alpha == 0.0);
  CHECK(cfg.symbols == 1000);
  CHECK(cfg.repetitions == 500);
  REQUIRE(cfg.policies.size() == 3);
  CHECK(cfg.policies[0].kind == PolicyKind::Baseline);
  CHECK(cfg.policies[1].kind == PolicyKind::Sbp);
  CHECK(cfg.policies[2].kind == PolicyKind::Genie);
}

TEST_CASE("invalid values are rejected with the field name") {
  try {
    parse_config_text(R"({"p": 1.5})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("p") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text(R"({"L": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"nodes": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"p": [0.1, 0.2]})"), ConfigError);  // length != nodes
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"policies": ["quux"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string("/no/such/file.json")), ConfigError);
}

TEST_CASE("dBm keys convert once, watt keys win") {
  const ScenarioConfig dbm = parse_config_text(R"({"p_t_dbm": 10})");
  CHECK(rel_close(dbm.p_t_w, 0.01, 1e-12));
  const ScenarioConfig watts = parse_config_text(R"({"p_t_w": 0.25, "p_t_dbm": 10})");
  CHECK(watts.p_t_w == 0.25);
}

TEST_CASE("per-node arrays and policy strings") {
  const ScenarioConfig cfg = parse_config_text(
      R"({"nodes": 3, "p": [0.1, 0.2, 0.3], "L": [5, 10, 15],
          "policies": ["baseline", "bbp4", "sbp"], "prob_threshold": 1e-6,
          "reset_period": 100})");
  CHECK(cfg.profiles[1].p == 0.2);
  CHECK(cfg.profiles[2].L == 15);
  CHECK(cfg.policies[1].kind == PolicyKind::Bbp);
  CHECK(cfg.policies[1].block_len == 4);
  for (const PredictorPolicy& p : cfg.policies) {
    CHECK(p.prob_threshold == 1e-6);
    CHECK(p.reset_period == 100);
  }
}

TEST_CASE("serialization round-trips exactly") {
  ScenarioConfig cfg = parse_config_text(
      R"({"nodes": 3, "p": [0.05, 0.2, 0.3], "L": 7, "p_t_w": 0.2,
          "policies": ["sbp", "bbp3"], "csi_alpha": 0.001, "seed": 99,
          "symbols": 123, "repetitions": 11, "snr_min_linear": 15.0})");
  const ScenarioConfig again = parse_config_text(serialize_config(cfg));
  CHECK(again == cfg);

  const ScenarioConfig defaults = parse_config_text("{}");
  CHECK(parse_config_text(serialize_config(defaults)) == defaults);
}

TEST_CASE("config hash is stable and content-sensitive") {
  const ScenarioConfig a = parse_config_text("{}");
  const ScenarioConfig b = parse_config_text(R"({"seed": 2})");
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == config_hash(parse_config_text("{}")));
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("policy name parsing") {
  CHECK(parse_policy("baseline").kind == PolicyKind::Baseline);
  CHECK(parse_policy("genie").kind == PolicyKind::Genie);
  CHECK(parse_policy("sbp").kind == PolicyKind::Sbp);
  CHECK(parse_policy("bbp").block_len == 2);
  CHECK(parse_policy("bbp", 5).block_len == 5);
  CHECK(parse_policy("bbp7").block_len == 7);
  CHECK_THROWS_AS(parse_policy("bbp0"), ConfigError);
  CHECK_THROWS_AS(parse_policy("bbpx"), ConfigError);
  CHECK_THROWS_AS(parse_policy(""), ConfigError);
}

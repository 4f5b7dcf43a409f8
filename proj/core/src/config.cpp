#include "swipt/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace swipt {

using nlohmann::json;

namespace {

double require_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(key + ": must be a number");
  return j[key].get<double>();
}

int require_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(key + ": must be an integer");
  return j[key].get<int>();
}

}  // namespace

PredictorPolicy parse_policy(const std::string& name, int default_block_len) {
  PredictorPolicy p;
  if (name == "baseline") {
    p.kind = PolicyKind::Baseline;
  } else if (name == "genie") {
    p.kind = PolicyKind::Genie;
  } else if (name == "sbp") {
    p.kind = PolicyKind::Sbp;
  } else if (name.rfind("bbp", 0) == 0) {
    p.kind = PolicyKind::Bbp;
    p.block_len = default_block_len;
    if (name.size() > 3) {
      int d = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 3, name.data() + name.size(), d);
      if (ec != std::errc{} || ptr != name.data() + name.size() || d < 1)
        throw ConfigError("policies: invalid block length in '" + name + "'");
      p.block_len = d;
    }
  } else {
    throw ConfigError("policies: unknown policy '" + name + "'");
  }
  return p;
}

ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  ScenarioConfig cfg;
  cfg.nodes = require_int(j, "nodes", 6);
  if (cfg.nodes < 1) throw ConfigError("nodes: must be >= 1");

  // p and L accept a scalar (applied to all nodes) or a per-node array.
  std::vector<double> p_vals(cfg.nodes, 0.1);
  std::vector<int> l_vals(cfg.nodes, 20);
  if (j.contains("p")) {
    if (j["p"].is_array()) {
      if (static_cast<int>(j["p"].size()) != cfg.nodes)
        throw ConfigError("p: array length must equal nodes");
      for (int n = 0; n < cfg.nodes; ++n) p_vals[n] = j["p"][n].get<double>();
    } else if (j["p"].is_number()) {
      std::fill(p_vals.begin(), p_vals.end(), j["p"].get<double>());
    } else {
      throw ConfigError("p: must be a number or an array of numbers");
    }
  }
  if (j.contains("L")) {
    if (j["L"].is_array()) {
      if (static_cast<int>(j["L"].size()) != cfg.nodes)
        throw ConfigError("L: array length must equal nodes");
      for (int n = 0; n < cfg.nodes; ++n) l_vals[n] = j["L"][n].get<int>();
    } else if (j["L"].is_number_integer()) {
      std::fill(l_vals.begin(), l_vals.end(), j["L"].get<int>());
    } else {
      throw ConfigError("L: must be an integer or an array of integers");
    }
  }
  cfg.profiles.resize(cfg.nodes);
  for (int n = 0; n < cfg.nodes; ++n) {
    if (!(p_vals[n] > 0.0) || p_vals[n] > 1.0)
      throw ConfigError("p: values must be in (0,1]");
    if (l_vals[n] < 1) throw ConfigError("L: values must be >= 1");
    cfg.profiles[n] = {p_vals[n], l_vals[n]};
  }

  // Powers are taken in watts when given; *_dbm keys are converted once here.
  cfg.p_t_w = j.contains("p_t_w") ? require_number(j, "p_t_w", 0.0)
                                  : dbm_to_watts(require_number(j, "p_t_dbm", 20.0));
  cfg.noise.sigma2 = j.contains("sigma2_w") ? require_number(j, "sigma2_w", 0.0)
                                            : dbm_to_watts(require_number(j, "sigma2_dbm", -110.0));
  cfg.noise.delta2 = j.contains("delta2_w") ? require_number(j, "delta2_w", 0.0)
                                            : dbm_to_watts(require_number(j, "delta2_dbm", -75.0));
  cfg.reliability.eta = require_number(j, "eta", 0.5);
  cfg.reliability.snr_min_linear = require_number(j, "snr_min_linear", 20.0);
  cfg.reliability.rho_min = require_number(j, "rho_min", 1e-2);
  cfg.channel.rician_k = require_number(j, "rician_k", 3.0);
  cfg.channel.path_loss_exponent = require_number(j, "path_loss_exponent", 2.0);
  cfg.channel.carrier_hz = require_number(j, "carrier_hz", 900e6);
  cfg.channel.reference_distance_m = require_number(j, "reference_distance_m", 1.0);
  cfg.distance_min_m = require_number(j, "distance_min_m", 3.0);
  cfg.distance_max_m = require_number(j, "distance_max_m", 10.0);
  cfg.csi_alpha = require_number(j, "csi_alpha", 0.0);
  cfg.symbols = require_int(j, "symbols", 1000);
  cfg.repetitions = require_int(j, "repetitions", 500);
  cfg.threads = require_int(j, "threads", 1);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed: must be an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }

  const int default_d = require_int(j, "bbp_block", 2);
  const double threshold = require_number(j, "prob_threshold", 1e-8);
  std::optional<int> reset;
  if (j.contains("reset_period") && !j["reset_period"].is_null())
    reset = j["reset_period"].get<int>();

  cfg.policies.clear();
  if (j.contains("policies")) {
    if (!j["policies"].is_array()) throw ConfigError("policies: must be an array of strings");
    for (const auto& item : j["policies"]) {
      if (!item.is_string()) throw ConfigError("policies: must be an array of strings");
      cfg.policies.push_back(parse_policy(item.get<std::string>(), default_d));
    }
  } else {
    cfg.policies = {parse_policy("baseline"), parse_policy("sbp"), parse_policy("genie")};
  }
  for (PredictorPolicy& p : cfg.policies) {
    p.prob_threshold = threshold;
    p.reset_period = reset;
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json j;
  j["nodes"] = cfg.nodes;
  const bool uniform_p = std::all_of(cfg.profiles.begin(), cfg.profiles.end(),
                                     [&](const NodeProfile& p) { return p.p == cfg.profiles[0].p; });
  const bool uniform_l = std::all_of(cfg.profiles.begin(), cfg.profiles.end(),
                                     [&](const NodeProfile& p) { return p.L == cfg.profiles[0].L; });
  if (uniform_p) {
    j["p"] = cfg.profiles[0].p;
  } else {
    json arr = json::array();
    for (const NodeProfile& p : cfg.profiles) arr.push_back(p.p);
    j["p"] = arr;
  }
  if (uniform_l) {
    j["L"] = cfg.profiles[0].L;
  } else {
    json arr = json::array();
    for (const NodeProfile& p : cfg.profiles) arr.push_back(p.L);
    j["L"] = arr;
  }
  j["p_t_w"] = cfg.p_t_w;
  j["sigma2_w"] = cfg.noise.sigma2;
  j["delta2_w"] = cfg.noise.delta2;
  j["eta"] = cfg.reliability.eta;
  j["snr_min_linear"] = cfg.reliability.snr_min_linear;
  j["rho_min"] = cfg.reliability.rho_min;
  j["rician_k"] = cfg.channel.rician_k;
  j["path_loss_exponent"] = cfg.channel.path_loss_exponent;
  j["carrier_hz"] = cfg.channel.carrier_hz;
  j["reference_distance_m"] = cfg.channel.reference_distance_m;
  j["distance_min_m"] = cfg.distance_min_m;
  j["distance_max_m"] = cfg.distance_max_m;
  j["csi_alpha"] = cfg.csi_alpha;
  j["symbols"] = cfg.symbols;
  j["repetitions"] = cfg.repetitions;
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  json pols = json::array();
  int default_d = 2;
  for (const PredictorPolicy& p : cfg.policies) {
    pols.push_back(p.name());
    if (p.kind == PolicyKind::Bbp) default_d = p.block_len;
  }
  j["policies"] = pols;
  j["bbp_block"] = default_d;
  if (!cfg.policies.empty()) {
    j["prob_threshold"] = cfg.policies.front().prob_threshold;
    if (cfg.policies.front().reset_period)
      j["reset_period"] = *cfg.policies.front().reset_period;
  }
  return j.dump(2);
}

std::string config_hash(const ScenarioConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace swipt

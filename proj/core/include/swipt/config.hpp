#pragma once

#include <stdexcept>
#include <string>

#include "swipt/sim.hpp"

namespace swipt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads a JSON scenario configuration; missing keys take the default
/// deployment (6 nodes, p = 0.1, L = 20, P_t = 20 dBm, sigma2 = -110 dBm,
/// delta2 = -75 dBm, eta = 0.5, Rician K = 3, exponent 2, 900 MHz,
/// distances 3..10 m). Invalid values raise ConfigError naming the field.
ScenarioConfig parse_config(const std::string& path);

/// Same, from a JSON string.
ScenarioConfig parse_config_text(const std::string& text);

/// Canonical JSON serialization; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

/// Parses one policy name: baseline | genie | sbp | bbp | bbp<D>.
PredictorPolicy parse_policy(const std::string& name, int default_block_len = 2);

}  // namespace swipt

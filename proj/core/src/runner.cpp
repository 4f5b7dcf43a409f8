#include "swipt/runner.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace swipt {

namespace {

constexpr const char* kCodeVersion = "0.1.0";
constexpr const char* kCsvHeader = "axis,value,policy,pharv_w,pharv_dbuw,violations,mean_rho,reps,seed";

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

double parse_value(const std::string& tok) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ConfigError("sweep: bad numeric value '" + tok + "'");
  }
  if (pos != tok.size()) throw ConfigError("sweep: bad numeric value '" + tok + "'");
  return v;
}

void write_manifest(const std::string& out_path, const ScenarioConfig& cfg, bool partial) {
  nlohmann::json m;
  m["seed"] = cfg.seed;
  m["config_hash"] = config_hash(cfg);
  m["code_version"] = kCodeVersion;
  m["partial"] = partial;
  m["repetitions"] = cfg.repetitions;
  m["symbols"] = cfg.symbols;
  std::ofstream f(out_path + ".manifest.json");
  f << m.dump(2) << "\n";
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep: expected axis=values, got '" + spec + "'");
  SweepSpec out;
  try {
    out.axis = sweep_axis_from_name(spec.substr(0, eq));
  } catch (const std::invalid_argument&) {
    out.axis = SweepAxis::None;
  }
  if (out.axis == SweepAxis::None) throw ConfigError("sweep: unknown axis '" + spec.substr(0, eq) + "'");
  const std::string body = spec.substr(eq + 1);
  if (body.empty()) throw ConfigError("sweep: empty value list");

  const auto dots = body.find("..");
  if (dots != std::string::npos) {
    const double lo = parse_value(body.substr(0, dots));
    const double hi = parse_value(body.substr(dots + 2));
    if (lo != static_cast<long>(lo) || hi != static_cast<long>(hi) || hi < lo)
      throw ConfigError("sweep: range bounds must be integers with hi >= lo");
    for (long v = static_cast<long>(lo); v <= static_cast<long>(hi); ++v)
      out.values.push_back(static_cast<double>(v));
    return out;
  }

  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.values.push_back(parse_value(tok));
  if (out.values.empty()) throw ConfigError("sweep: empty value list");
  return out;
}

ScenarioConfig resolve_config(const RunOptions& opts) {
  ScenarioConfig cfg = opts.config_path ? parse_config(*opts.config_path)
                                        : parse_config_text("{}");
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.reps) cfg.repetitions = *opts.reps;
  if (opts.symbols) cfg.symbols = *opts.symbols;
  if (opts.threads) cfg.threads = *opts.threads;
  if (opts.full) cfg.repetitions = 5000;
  if (!opts.csi) cfg.csi_alpha = 0.0;
  if (opts.policies) {
    cfg.policies.clear();
    std::stringstream ss(*opts.policies);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) cfg.policies.push_back(parse_policy(tok));
    }
    if (cfg.policies.empty()) throw ConfigError("policies: empty list");
  }
  cfg.validate();
  return cfg;
}

std::string to_csv(const SweepResult& result, int repetitions, std::uint64_t seed) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  const std::string axis = sweep_axis_name(result.axis);
  for (const SweepRow& row : result.rows) {
    for (const PolicyMetrics& pm : row.metrics.policies) {
      os << axis << ',' << sci(row.value) << ',' << pm.name << ','
         << sci(pm.mean_harvest_w) << ',' << sci(pm.mean_harvest_dbuw) << ','
         << sci(pm.violation_fraction) << ',' << sci(pm.mean_rho) << ','
         << repetitions << ',' << seed << "\n";
    }
  }
  return os.str();
}

int run_command(const RunOptions& opts) {
  const ScenarioConfig cfg = resolve_config(opts);

  SweepAxis axis = SweepAxis::None;
  std::vector<double> values{0.0};
  if (opts.sweep) {
    SweepSpec spec = parse_sweep_spec(*opts.sweep);
    axis = spec.axis;
    values = std::move(spec.values);
  }

  // Rows are flushed per axis value so a late failure still leaves usable data.
  SweepResult result;
  result.axis = axis;
  bool partial = false;
  std::string error;
  for (double v : values) {
    try {
      ScenarioConfig point = apply_axis(cfg, axis, v);
      point.seed = cfg.seed;
      result.rows.push_back({v, run_many(point)});
    } catch (const std::exception& e) {
      partial = true;
      error = e.what();
      break;
    }
    std::ofstream f(opts.out);
    f << to_csv(result, cfg.repetitions, cfg.seed);
  }
  if (partial) {
    std::ofstream f(opts.out);
    f << to_csv(result, cfg.repetitions, cfg.seed);
  }
  write_manifest(opts.out, cfg, partial);
  if (partial) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return 1;
  }
  return 0;
}

}  // namespace swipt

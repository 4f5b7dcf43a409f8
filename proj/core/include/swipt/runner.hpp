#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/sim.hpp"

namespace swipt {

/// A parsed `--sweep axis=spec` argument. Specs are either integer ranges
/// ("N=2..8") or comma lists ("alpha=0,1e-4,1e-3").
struct SweepSpec {
  SweepAxis axis = SweepAxis::None;
  std::vector<double> values;
};

SweepSpec parse_sweep_spec(const std::string& spec);

/// Options of the `run` subcommand, after flag parsing.
struct RunOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> sweep;      ///< e.g. "N=2..8"
  std::optional<std::string> policies;   ///< comma list, e.g. "baseline,sbp,genie"
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> symbols;
  std::optional<int> threads;
  bool full = false;  ///< full-scale repetitions (5000)
  bool csi = false;   ///< enable the imperfect-CSI path
  std::string out = "results.csv";
};

/// Resolves flags on top of the (possibly default) config file.
ScenarioConfig resolve_config(const RunOptions& opts);

/// Serializes sweep results as CSV with the fixed header
/// axis,value,policy,pharv_w,pharv_dbuw,violations,mean_rho,reps,seed
/// and full-precision scientific notation for all real-valued columns.
std::string to_csv(const SweepResult& result, int repetitions, std::uint64_t seed);

/// Executes a sweep (or a single run), writes <out> and <out>.manifest.json.
/// Returns 0 on success; on failure, flushes partial results and marks the
/// manifest with partial=true.
int run_command(const RunOptions& opts);

}  // namespace swipt

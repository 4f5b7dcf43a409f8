#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/predictor.hpp"
#include "swipt/psf.hpp"
#include "swipt/traffic.hpp"
#include "swipt/units.hpp"

namespace swipt {

/// Everything needed to run one Monte Carlo experiment.
struct ScenarioConfig {
  int nodes = 6;
  std::vector<NodeProfile> profiles;  ///< size `nodes`
  double p_t_w = dbm_to_watts(20.0);
  ChannelParams channel;
  NoiseParams noise;
  ReliabilityConfig reliability;
  double distance_min_m = 3.0;
  double distance_max_m = 10.0;
  double csi_alpha = 0.0;  ///< theta2_n = alpha * |h_n|^2; 0 = perfect CSI
  int symbols = 1000;      ///< measured symbols per scenario (after burn-in)
  int repetitions = 500;
  std::uint64_t seed = 1;
  std::vector<PredictorPolicy> policies{{PolicyKind::Baseline}, {PolicyKind::Sbp}, {PolicyKind::Genie}};
  int threads = 1;

  void validate() const;
  bool operator==(const ScenarioConfig&) const;
};

/// Aggregated per-policy results.
struct PolicyMetrics {
  std::string name;
  double mean_harvest_w = 0.0;
  double mean_harvest_dbuw = 0.0;
  double violation_fraction = 0.0;
  double mean_rho = 0.0;
  double mean_d0 = 0.0;               ///< over symbols with a finite d0
  double mean_retained_states = 0.0;  ///< over symbols with a prediction set
  long prediction_errors = 0;         ///< true state outside the retained set
  long symbols = 0;
  long d0_symbols = 0;        ///< symbols contributing to mean_d0
  long retained_symbols = 0;  ///< symbols contributing to mean_retained_states
  double wall_ms = 0.0;
};

struct RunMetrics {
  std::vector<PolicyMetrics> policies;
  std::uint64_t seed = 0;

  const PolicyMetrics& policy(const std::string& name) const;
};

/// One drawn deployment: per-node distances, the gains the receiver knows,
/// the true gains (different when csi_alpha > 0), and the per-node channel
/// uncertainty standard deviations.
struct ScenarioDraw {
  std::vector<double> distances_m;
  std::vector<std::complex<double>> h_known;
  std::vector<std::complex<double>> h_true;
  std::vector<double> theta;
};

/// The deployment run_scenario(cfg, seed) would use; deterministic and
/// per-node independent (node n's draw does not depend on the other nodes).
ScenarioDraw draw_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

/// Seed that run_repetitions assigns to repetition i.
std::uint64_t repetition_seed(std::uint64_t master, int repetition);

/// Runs one scenario repetition: one deployment and channel draw, one
/// traffic trace, every policy evaluated symbol-by-symbol on the same trace,
/// channels, and noise. Deterministic in (cfg, seed).
RunMetrics run_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

/// All repetitions of a scenario, possibly on a worker pool; the result is
/// independent of the thread count.
std::vector<RunMetrics> run_repetitions(const ScenarioConfig& cfg);

/// Order-independent aggregation over repetitions.
RunMetrics aggregate(std::span<const RunMetrics> reps);

/// Convenience: run_repetitions + aggregate.
RunMetrics run_many(const ScenarioConfig& cfg);

enum class SweepAxis { None, Nodes, P, L, D, Alpha };

SweepAxis sweep_axis_from_name(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

/// Applies one sweep-axis value to a copy of the base config.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  RunMetrics metrics;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::None;
  std::vector<SweepRow> rows;
};

/// Runs one RunMetrics row per axis value with identical seeds across values.
SweepResult sweep(const ScenarioConfig& base, SweepAxis axis, std::span<const double> values);

/// Expected number of simultaneously active nodes, sum of duty cycles.
double average_active_nodes(std::span<const NodeProfile> profiles);

/// Joint detection: the constellation point minimizing
/// |sqrt(rho) * point - post_split_sample|; ties break to the lowest index.
const LabeledPoint& jd_detect(std::complex<double> post_split_sample,
                              const LabeledConstellation& c, double rho);

}  // namespace swipt

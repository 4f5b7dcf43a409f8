#pragma once

#include <complex>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "swipt/constellation.hpp"
#include "swipt/psf.hpp"
#include "swipt/traffic.hpp"

namespace swipt {

enum class PolicyKind { Baseline, Genie, Sbp, Bbp };

/// A PSF policy instance description.
struct PredictorPolicy {
  PolicyKind kind = PolicyKind::Sbp;
  int block_len = 1;              ///< D, block length in symbols (Bbp only)
  double prob_threshold = 1e-8;   ///< states below this probability are dropped
  std::optional<int> reset_period;  ///< fall back to the baseline rho every so often
  /// Symbols between the last decided state and the first predicted block
  /// symbol (Bbp). Default block_len + 1 models the calculation delay; tests
  /// use 1 to collapse Bbp onto Sbp.
  std::optional<int> context_lag;

  void validate() const {
    if (kind == PolicyKind::Bbp && block_len < 1)
      throw std::invalid_argument("block_len must be >= 1");
    if (!(prob_threshold > 0.0) || prob_threshold >= 1.0)
      throw std::invalid_argument("prob_threshold must be in (0,1)");
    if (reset_period && *reset_period < 1)
      throw std::invalid_argument("reset_period must be >= 1");
  }

  std::string name() const;
};

/// One candidate activity state of a future symbol interval, with its
/// chained probability and the per-node packet phases that realize it.
/// Phase = trailing-ones count of the node's activity window, saturated at L:
/// 0 = idle, 1..L-1 = mid-packet (forced continuation), L = the window is all
/// ones and the packet boundary is ambiguous (the node may stop or continue).
struct Hypothesis {
  std::uint32_t bits = 0;
  double prob = 1.0;
  std::vector<std::uint16_t> phases;
};

/// Tracks the per-node packet phases implied by the decided activity states.
class PredictionContext {
 public:
  explicit PredictionContext(std::vector<NodeProfile> profiles);

  void observe(const ActivityState& state);
  void reset();  ///< forget all phases (all-idle assumption)

  const std::vector<std::uint16_t>& phases() const { return phases_; }
  const std::vector<NodeProfile>& profiles() const { return profiles_; }
  ActivityState last_state() const;
  int n_nodes() const { return static_cast<int>(profiles_.size()); }

 private:
  std::vector<NodeProfile> profiles_;
  std::vector<std::uint16_t> phases_;
};

/// Expands one hypothesis by one symbol interval: every candidate next state
/// gets probability prior.prob times the product of per-node transition
/// probabilities; candidates at or below `threshold` are dropped. Nodes
/// mid-packet transition deterministically, so only free nodes branch.
std::vector<Hypothesis> expand_hypothesis(const Hypothesis& prior,
                                          std::span<const NodeProfile> profiles,
                                          double threshold);

/// Candidate next states from the decided context (prior probability 1
/// unless stated otherwise), per the relevant-state selection rule.
std::vector<Hypothesis> select_relevant_states(const PredictionContext& ctx,
                                               double prior_prob, double threshold);

/// Caches per-state constellation points and minimum distances of one
/// scenario (static channels). Distances use the imperfect-CSI shrinkage
/// whenever a nonzero theta is configured.
class ConstellationBank {
 public:
  ConstellationBank(std::vector<std::complex<double>> known_gains, double p_t_watts,
                    std::vector<double> theta = {});

  int n_nodes() const { return n_; }

  /// Minimum distance of the union constellation over the given labels.
  /// `labels` is sorted/deduplicated in place (cache key).
  double d0_for_labels(std::vector<std::uint32_t>& labels);

  /// Minimum distance within a single state's point set (+inf for <2 points).
  double d0_single(std::uint32_t label);

  /// Minimum distance of the union over all 2^N states.
  double d0_all_states();

  /// The union constellation for the given labels (used by joint detection).
  LabeledConstellation constellation_for_labels(std::span<const std::uint32_t> labels);

 private:
  const std::vector<LabeledPoint>& points(std::uint32_t label);
  double distance_of(const LabeledConstellation& c) const;

  int n_;
  double p_t_;
  std::vector<std::complex<double>> gains_;
  std::vector<double> theta_points_;  // sqrt(P_t)-scaled, empty if perfect CSI
  bool imperfect_ = false;
  std::unordered_map<std::uint32_t, std::vector<LabeledPoint>> point_cache_;
  std::unordered_map<std::uint64_t, std::pair<std::vector<std::uint32_t>, double>> d0_cache_;
  double d0_baseline_ = -1.0;
};

/// Per-symbol output of a predictive policy.
struct SymbolDecision {
  PsfDecision psf;
  int retained_states = 0;
  std::vector<std::uint32_t> labels;  ///< retained activity states

  bool contains(std::uint32_t bits) const;
};

/// Symbol-based predictor: expands the decided previous state one step,
/// keeps the likely states, and picks the smallest reliable rho from the
/// union constellation's minimum distance.
class SbpPredictor {
 public:
  SbpPredictor(std::vector<NodeProfile> profiles, ConstellationBank& bank,
               NoiseParams noise, ReliabilityConfig cfg, PredictorPolicy policy);

  /// Decision for the upcoming symbol; call before observe() for it.
  SymbolDecision decide();
  void observe(const ActivityState& state) { ctx_.observe(state); }
  const PredictionContext& context() const { return ctx_; }

 private:
  PredictionContext ctx_;
  ConstellationBank& bank_;
  NoiseParams noise_;
  ReliabilityConfig cfg_;
  PredictorPolicy policy_;
  long symbol_index_ = 0;
};

/// Block-based predictor: one rho per block of D symbols, chained over the
/// 2D-symbol prediction horizon dictated by the calculation delay.
class BbpPredictor {
 public:
  BbpPredictor(std::vector<NodeProfile> profiles, ConstellationBank& bank,
               NoiseParams noise, ReliabilityConfig cfg, PredictorPolicy policy);

  /// Decision for the upcoming symbol (recomputed at block boundaries).
  SymbolDecision decide();
  void observe(const ActivityState& state);

 private:
  SymbolDecision decide_block();

  PredictionContext ctx_;
  ConstellationBank& bank_;
  NoiseParams noise_;
  ReliabilityConfig cfg_;
  PredictorPolicy policy_;
  int lag_;
  long symbol_index_ = 0;
  std::deque<std::vector<std::uint16_t>> snapshots_;  // phases after each observed symbol
  SymbolDecision current_;
};

/// Genie bound: the true activity state is known, only the signs are not.
PsfDecision genie_psf(const ActivityState& true_state, ConstellationBank& bank,
                      const NoiseParams& noise, const ReliabilityConfig& cfg);

/// Constant-rho lower bound from the union over all 2^N states.
PsfDecision baseline_psf(ConstellationBank& bank, const NoiseParams& noise,
                         const ReliabilityConfig& cfg);

}  // namespace swipt

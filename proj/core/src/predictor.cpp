#include "swipt/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace swipt {

std::string PredictorPolicy::name() const {
  switch (kind) {
    case PolicyKind::Baseline: return "baseline";
    case PolicyKind::Genie: return "genie";
    case PolicyKind::Sbp: return "sbp";
    case PolicyKind::Bbp: return "bbp" + std::to_string(block_len);
  }
  return "?";
}

PredictionContext::PredictionContext(std::vector<NodeProfile> profiles)
    : profiles_(std::move(profiles)), phases_(profiles_.size(), 0) {
  for (const NodeProfile& p : profiles_) p.validate();
  if (profiles_.size() > static_cast<std::size_t>(kMaxEnumeratedNodes))
    throw SizeLimitError("prediction limited to 16 nodes");
}

void PredictionContext::observe(const ActivityState& state) {
  if (state.n_nodes != n_nodes()) throw std::invalid_argument("dimension mismatch");
  for (int n = 0; n < n_nodes(); ++n) {
    if (!state.active(n)) {
      phases_[n] = 0;
    } else {
      // Saturates at L: an all-ones window cannot locate the packet boundary,
      // so every further symbol stays boundary-ambiguous.
      phases_[n] = static_cast<std::uint16_t>(
          std::min<int>(phases_[n] + 1, profiles_[n].L));
    }
  }
}

void PredictionContext::reset() { std::fill(phases_.begin(), phases_.end(), 0); }

ActivityState PredictionContext::last_state() const {
  std::uint32_t bits = 0;
  for (int n = 0; n < n_nodes(); ++n)
    if (phases_[n] > 0) bits |= 1u << n;
  return {bits, n_nodes()};
}

std::vector<Hypothesis> expand_hypothesis(const Hypothesis& prior,
                                          std::span<const NodeProfile> profiles,
                                          double threshold) {
  const int n = static_cast<int>(profiles.size());
  // Nodes mid-packet continue deterministically; only free nodes branch.
  std::uint32_t forced_bits = 0;
  std::vector<int> free_nodes;
  for (int node = 0; node < n; ++node) {
    const std::uint16_t ph = prior.phases[node];
    if (ph > 0 && ph < profiles[node].L)
      forced_bits |= 1u << node;
    else
      free_nodes.push_back(node);
  }

  std::vector<Hypothesis> out;
  const int f = static_cast<int>(free_nodes.size());
  out.reserve(std::size_t{1} << std::min(f, 10));
  for (std::uint32_t combo = 0; combo < (1u << f); ++combo) {
    double prob = prior.prob;
    std::uint32_t bits = forced_bits;
    for (int j = 0; j < f; ++j) {
      const double p = profiles[free_nodes[j]].p;
      if ((combo >> j) & 1u) {
        prob *= p;
        bits |= 1u << free_nodes[j];
      } else {
        prob *= 1.0 - p;
      }
      if (!(prob > threshold)) break;
    }
    if (!(prob > threshold)) continue;

    Hypothesis h;
    h.bits = bits;
    h.prob = prob;
    h.phases = prior.phases;
    for (int node = 0; node < n; ++node) {
      if ((bits >> node) & 1u) {
        h.phases[node] = static_cast<std::uint16_t>(
            std::min<int>(h.phases[node] + 1, profiles[node].L));
      } else {
        h.phases[node] = 0;
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<Hypothesis> select_relevant_states(const PredictionContext& ctx,
                                               double prior_prob, double threshold) {
  Hypothesis prior;
  prior.bits = ctx.last_state().bits;
  prior.prob = prior_prob;
  prior.phases = ctx.phases();
  return expand_hypothesis(prior, ctx.profiles(), threshold);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t labels_hash(std::span<const std::uint32_t> labels) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint32_t v : labels) {
    h ^= v;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

constexpr std::size_t kMaxCachedSets = 1u << 18;

}  // namespace

ConstellationBank::ConstellationBank(std::vector<std::complex<double>> known_gains,
                                     double p_t_watts, std::vector<double> theta)
    : n_(static_cast<int>(known_gains.size())), p_t_(p_t_watts), gains_(std::move(known_gains)) {
  if (n_ < 1) throw std::invalid_argument("need at least one node");
  if (n_ > kMaxEnumeratedNodes) throw SizeLimitError("bank limited to 16 nodes");
  if (!theta.empty()) {
    if (static_cast<int>(theta.size()) != n_) throw std::invalid_argument("theta length mismatch");
    const double amp = std::sqrt(p_t_);
    theta_points_.resize(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      if (theta[i] < 0.0) throw std::invalid_argument("theta must be >= 0");
      theta_points_[i] = amp * theta[i];
      if (theta[i] > 0.0) imperfect_ = true;
    }
  }
}

const std::vector<LabeledPoint>& ConstellationBank::points(std::uint32_t label) {
  auto it = point_cache_.find(label);
  if (it == point_cache_.end()) {
    it = point_cache_.emplace(label, points_for_state({label, n_}, gains_, p_t_)).first;
  }
  return it->second;
}

double ConstellationBank::distance_of(const LabeledConstellation& c) const {
  return imperfect_ ? min_distance_imperfect_csi(c, theta_points_) : min_distance(c);
}

LabeledConstellation ConstellationBank::constellation_for_labels(
    std::span<const std::uint32_t> labels) {
  LabeledConstellation c;
  c.n_nodes = n_;
  for (std::uint32_t label : labels) {
    const auto& pts = points(label);
    c.points.insert(c.points.end(), pts.begin(), pts.end());
  }
  return c;
}

double ConstellationBank::d0_for_labels(std::vector<std::uint32_t>& labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const std::uint64_t key = labels_hash(labels);
  auto it = d0_cache_.find(key);
  if (it != d0_cache_.end() && it->second.first == labels) return it->second.second;

  const double d0 = distance_of(constellation_for_labels(labels));
  if (it == d0_cache_.end() && d0_cache_.size() < kMaxCachedSets)
    d0_cache_.emplace(key, std::make_pair(labels, d0));
  return d0;
}

double ConstellationBank::d0_single(std::uint32_t label) {
  const auto& pts = points(label);
  if (pts.size() < 2) return kInfiniteDistance;
  LabeledConstellation c{pts, n_};
  // Same label everywhere: the CSI shrinkage vanishes, plain distance applies.
  return min_distance(c);
}

double ConstellationBank::d0_all_states() {
  if (d0_baseline_ < 0.0) {
    std::vector<std::uint32_t> labels(std::size_t{1} << n_);
    for (std::uint32_t b = 0; b < labels.size(); ++b) labels[b] = b;
    d0_baseline_ = distance_of(constellation_for_labels(labels));
  }
  return d0_baseline_;
}

// ---------------------------------------------------------------------------

bool SymbolDecision::contains(std::uint32_t bits) const {
  return std::find(labels.begin(), labels.end(), bits) != labels.end();
}

SbpPredictor::SbpPredictor(std::vector<NodeProfile> profiles, ConstellationBank& bank,
                           NoiseParams noise, ReliabilityConfig cfg, PredictorPolicy policy)
    : ctx_(std::move(profiles)), bank_(bank), noise_(noise), cfg_(cfg), policy_(policy) {
  policy_.validate();
}

SymbolDecision SbpPredictor::decide() {
  const long m = symbol_index_++;
  if (policy_.reset_period && m > 0 && m % *policy_.reset_period == 0) {
    ctx_.reset();
    SymbolDecision dec;
    dec.psf = psf_from_distance(bank_.d0_all_states(), noise_, cfg_);
    dec.retained_states = -1;  // baseline fallback, no prediction set
    return dec;
  }

  std::vector<Hypothesis> hyps = select_relevant_states(ctx_, 1.0, policy_.prob_threshold);
  SymbolDecision dec;
  dec.labels.reserve(hyps.size());
  for (const Hypothesis& h : hyps) dec.labels.push_back(h.bits);
  dec.retained_states = static_cast<int>(dec.labels.size());
  const double d0 = bank_.d0_for_labels(dec.labels);
  dec.psf = psf_from_distance(d0, noise_, cfg_);
  return dec;
}

BbpPredictor::BbpPredictor(std::vector<NodeProfile> profiles, ConstellationBank& bank,
                           NoiseParams noise, ReliabilityConfig cfg, PredictorPolicy policy)
    : ctx_(std::move(profiles)), bank_(bank), noise_(noise), cfg_(cfg), policy_(policy),
      lag_(policy.context_lag.value_or(policy.block_len + 1)) {
  policy_.validate();
  if (lag_ < 1) throw std::invalid_argument("context_lag must be >= 1");
  // Initial condition: the process starts all-idle.
  snapshots_.push_back(std::vector<std::uint16_t>(ctx_.n_nodes(), 0));
}

void BbpPredictor::observe(const ActivityState& state) {
  ctx_.observe(state);
  snapshots_.push_back(ctx_.phases());
  const std::size_t keep = static_cast<std::size_t>(lag_) + 2;
  while (snapshots_.size() > keep) snapshots_.pop_front();
}

SymbolDecision BbpPredictor::decide() {
  const long m = symbol_index_++;
  const int d = policy_.block_len;
  if (m % d == 0) current_ = decide_block();
  return current_;
}

SymbolDecision BbpPredictor::decide_block() {
  const long q = symbol_index_ - 1;  // block's first symbol
  if (policy_.reset_period && q > 0 && q % *policy_.reset_period == 0) {
    ctx_.reset();
    SymbolDecision dec;
    dec.psf = psf_from_distance(bank_.d0_all_states(), noise_, cfg_);
    dec.retained_states = -1;
    return dec;
  }

  const int d = policy_.block_len;
  // The decided state available now is lag_ symbols before the block start.
  // snapshots_.back() is the phase vector after symbol q-1; step back lag_-1.
  const std::size_t back = std::min<std::size_t>(snapshots_.size() - 1,
                                                 static_cast<std::size_t>(lag_ - 1));
  Hypothesis root;
  root.phases = snapshots_[snapshots_.size() - 1 - back];
  root.prob = 1.0;

  std::vector<Hypothesis> hyps{root};
  // Predict lag_ + d - 1 symbols ahead of the last decided one; the final d
  // of them form the block.
  const int horizon = lag_ + d - 1;
  double d0_block = kInfiniteDistance;
  std::vector<std::uint32_t> first_labels;
  SymbolDecision dec;

  for (int step = 1; step <= horizon; ++step) {
    std::vector<Hypothesis> next;
    for (const Hypothesis& h : hyps) {
      auto children = expand_hypothesis(h, ctx_.profiles(), policy_.prob_threshold);
      for (Hypothesis& c : children) next.push_back(std::move(c));
    }
    // Remove duplicate states, keeping the most probable realization.
    std::sort(next.begin(), next.end(), [](const Hypothesis& a, const Hypothesis& b) {
      if (a.bits != b.bits) return a.bits < b.bits;
      return a.prob > b.prob;
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Hypothesis& a, const Hypothesis& b) {
                             return a.bits == b.bits;
                           }),
               next.end());
    hyps = std::move(next);
    if (hyps.empty()) break;  // all mass filtered; fall back to baseline below

    const int offset = step - (horizon - d + 1);
    if (offset >= 0) {
      std::vector<std::uint32_t> labels;
      labels.reserve(hyps.size());
      for (const Hypothesis& h : hyps) labels.push_back(h.bits);
      if (offset == 0) first_labels = labels;
      d0_block = std::min(d0_block, bank_.d0_for_labels(labels));
      dec.labels.insert(dec.labels.end(), labels.begin(), labels.end());
    }
  }

  if (hyps.empty() && dec.labels.empty()) {
    dec.psf = psf_from_distance(bank_.d0_all_states(), noise_, cfg_);
    dec.retained_states = -1;
    return dec;
  }

  std::sort(dec.labels.begin(), dec.labels.end());
  dec.labels.erase(std::unique(dec.labels.begin(), dec.labels.end()), dec.labels.end());
  dec.retained_states = static_cast<int>(first_labels.size());
  dec.psf = psf_from_distance(d0_block, noise_, cfg_);
  return dec;
}

PsfDecision genie_psf(const ActivityState& true_state, ConstellationBank& bank,
                      const NoiseParams& noise, const ReliabilityConfig& cfg) {
  return psf_from_distance(bank.d0_single(true_state.bits), noise, cfg);
}

PsfDecision baseline_psf(ConstellationBank& bank, const NoiseParams& noise,
                         const ReliabilityConfig& cfg) {
  return psf_from_distance(bank.d0_all_states(), noise, cfg);
}

}  // namespace swipt

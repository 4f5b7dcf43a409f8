#include "swipt/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <thread>

namespace swipt {

namespace {

// Stream labels for per-scenario RNG derivation.
constexpr std::uint64_t kStreamDistance = 0x64697374;
constexpr std::uint64_t kStreamChannel = 0x6368616e;
constexpr std::uint64_t kStreamCsi = 0x63736921;
constexpr std::uint64_t kStreamTraffic = 0x74726166;
constexpr std::uint64_t kStreamNoise = 0x6e6f6973;
constexpr std::uint64_t kStreamRepetition = 0x72657073;

struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

struct Accum {
  Kahan harvest;
  Kahan rho;
  Kahan d0;
  Kahan retained;
  long violations = 0;
  long pred_errors = 0;
  long symbols = 0;
  long d0_count = 0;
  long retained_count = 0;
  double wall_ns = 0.0;
};

struct PolicyRunner {
  PredictorPolicy spec;
  std::string name;
  PsfDecision constant;  // baseline
  std::unique_ptr<SbpPredictor> sbp;
  std::unique_ptr<BbpPredictor> bbp;
  Accum acc;
};

PolicyMetrics finalize(const Accum& a, const std::string& name) {
  PolicyMetrics m;
  m.name = name;
  m.symbols = a.symbols;
  if (a.symbols > 0) {
    m.mean_harvest_w = a.harvest.sum / a.symbols;
    m.mean_rho = a.rho.sum / a.symbols;
    m.violation_fraction = static_cast<double>(a.violations) / a.symbols;
  }
  m.mean_harvest_dbuw = watts_to_dbuw(m.mean_harvest_w);
  m.mean_d0 = a.d0_count > 0 ? a.d0.sum / a.d0_count : 0.0;
  m.mean_retained_states = a.retained_count > 0 ? a.retained.sum / a.retained_count : 0.0;
  m.prediction_errors = a.pred_errors;
  m.d0_symbols = a.d0_count;
  m.retained_symbols = a.retained_count;
  m.wall_ms = a.wall_ns * 1e-6;
  return m;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (nodes < 1) throw std::invalid_argument("nodes must be >= 1");
  if (static_cast<int>(profiles.size()) != nodes)
    throw std::invalid_argument("profiles size must equal nodes");
  for (const NodeProfile& p : profiles) p.validate();
  channel.validate();
  noise.validate();
  reliability.validate();
  if (!(p_t_w > 0.0)) throw std::invalid_argument("p_t_w must be > 0");
  if (!(distance_min_m > 0.0) || distance_max_m < distance_min_m)
    throw std::invalid_argument("invalid distance range");
  if (csi_alpha < 0.0) throw std::invalid_argument("csi_alpha must be >= 0");
  if (symbols < 1) throw std::invalid_argument("symbols must be >= 1");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (policies.empty()) throw std::invalid_argument("at least one policy required");
  for (const PredictorPolicy& p : policies) p.validate();
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  auto pol_eq = [](const PredictorPolicy& a, const PredictorPolicy& b) {
    return a.kind == b.kind && a.block_len == b.block_len &&
           a.prob_threshold == b.prob_threshold && a.reset_period == b.reset_period &&
           a.context_lag == b.context_lag;
  };
  if (!(nodes == o.nodes && p_t_w == o.p_t_w && distance_min_m == o.distance_min_m &&
        distance_max_m == o.distance_max_m && csi_alpha == o.csi_alpha &&
        symbols == o.symbols && repetitions == o.repetitions && seed == o.seed &&
        threads == o.threads))
    return false;
  if (profiles.size() != o.profiles.size() || policies.size() != o.policies.size()) return false;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (profiles[i].p != o.profiles[i].p || profiles[i].L != o.profiles[i].L) return false;
  for (std::size_t i = 0; i < policies.size(); ++i)
    if (!pol_eq(policies[i], o.policies[i])) return false;
  return channel.rician_k == o.channel.rician_k &&
         channel.path_loss_exponent == o.channel.path_loss_exponent &&
         channel.carrier_hz == o.channel.carrier_hz &&
         channel.reference_distance_m == o.channel.reference_distance_m &&
         noise.sigma2 == o.noise.sigma2 && noise.delta2 == o.noise.delta2 &&
         reliability.snr_min_linear == o.reliability.snr_min_linear &&
         reliability.rho_min == o.reliability.rho_min && reliability.eta == o.reliability.eta;
}

const PolicyMetrics& RunMetrics::policy(const std::string& name) const {
  for (const PolicyMetrics& m : policies)
    if (m.name == name) return m;
  throw std::out_of_range("no such policy: " + name);
}

ScenarioDraw draw_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  const int n = cfg.nodes;
  ScenarioDraw out;
  out.distances_m.resize(n);
  out.h_known.resize(n);
  out.h_true.resize(n);
  out.theta.assign(n, 0.0);
  for (int node = 0; node < n; ++node) {
    Rng dist_rng(derive_seed(seed, {kStreamDistance, static_cast<std::uint64_t>(node)}));
    // Planar deployment: uniform over the annulus area, not over the radius.
    const double r0 = cfg.distance_min_m, r1 = cfg.distance_max_m;
    const double d = std::sqrt(r0 * r0 + dist_rng.uniform() * (r1 * r1 - r0 * r0));
    out.distances_m[node] = d;
    Rng chan_rng(derive_seed(seed, {kStreamChannel, static_cast<std::uint64_t>(node)}));
    out.h_known[node] = draw_channel(d, cfg.channel, chan_rng);
    out.h_true[node] = out.h_known[node];
    if (cfg.csi_alpha > 0.0) {
      const double theta2 = cfg.csi_alpha * std::norm(out.h_known[node]);
      out.theta[node] = std::sqrt(theta2);
      Rng csi_rng(derive_seed(seed, {kStreamCsi, static_cast<std::uint64_t>(node)}));
      out.h_true[node] += csi_rng.cgaussian(theta2);
    }
  }
  return out;
}

std::uint64_t repetition_seed(std::uint64_t master, int repetition) {
  return derive_seed(master, {kStreamRepetition, static_cast<std::uint64_t>(repetition)});
}

RunMetrics run_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();

  const ScenarioDraw draw = draw_scenario(cfg, seed);
  const std::vector<std::complex<double>>& h_known = draw.h_known;
  const std::vector<std::complex<double>>& h_true = draw.h_true;
  const std::vector<double>& theta = draw.theta;

  int burn = 0;
  for (const NodeProfile& p : cfg.profiles) burn = std::max(burn, p.L);
  const int total = burn + cfg.symbols;

  const TrafficTrace trace =
      generate_trace(cfg.profiles, total, derive_seed(seed, {kStreamTraffic}));
  Rng noise_rng(derive_seed(seed, {kStreamNoise}));

  ConstellationBank bank(h_known, cfg.p_t_w,
                         cfg.csi_alpha > 0.0 ? theta : std::vector<double>{});

  std::vector<PolicyRunner> runners;
  runners.reserve(cfg.policies.size());
  for (const PredictorPolicy& pol : cfg.policies) {
    PolicyRunner r;
    r.spec = pol;
    r.name = pol.name();
    switch (pol.kind) {
      case PolicyKind::Baseline:
        r.constant = baseline_psf(bank, cfg.noise, cfg.reliability);
        break;
      case PolicyKind::Genie:
        break;
      case PolicyKind::Sbp:
        r.sbp = std::make_unique<SbpPredictor>(cfg.profiles, bank, cfg.noise, cfg.reliability, pol);
        break;
      case PolicyKind::Bbp:
        r.bbp = std::make_unique<BbpPredictor>(cfg.profiles, bank, cfg.noise, cfg.reliability, pol);
        break;
    }
    runners.push_back(std::move(r));
  }

  using clock = std::chrono::steady_clock;
  const double eta = cfg.reliability.eta;

  for (int m = 0; m < total; ++m) {
    const ActivityState state = trace.state(m);
    const std::complex<double> y =
        received_sample(state, trace.symbols(m), h_true, cfg.p_t_w, cfg.noise, noise_rng);
    const double y_abs2 = std::norm(y);
    const bool measured = m >= burn;

    for (PolicyRunner& r : runners) {
      const auto t0 = clock::now();
      SymbolDecision dec;
      switch (r.spec.kind) {
        case PolicyKind::Baseline:
          dec.psf = r.constant;
          dec.retained_states = -1;
          break;
        case PolicyKind::Genie:
          dec.psf = genie_psf(state, bank, cfg.noise, cfg.reliability);
          dec.retained_states = -1;
          break;
        case PolicyKind::Sbp:
          dec = r.sbp->decide();
          break;
        case PolicyKind::Bbp:
          dec = r.bbp->decide();
          break;
      }
      if (r.sbp) r.sbp->observe(state);
      if (r.bbp) r.bbp->observe(state);
      r.acc.wall_ns += std::chrono::duration<double, std::nano>(clock::now() - t0).count();

      if (!measured) continue;
      Accum& a = r.acc;
      a.symbols += 1;
      a.harvest.add(harvested_power_instant(dec.psf.rho, y_abs2, eta));
      a.rho.add(dec.psf.rho);
      if (!dec.psf.feasible) a.violations += 1;
      if (std::isfinite(dec.psf.d0)) {
        a.d0.add(dec.psf.d0);
        a.d0_count += 1;
      }
      if (dec.retained_states >= 0) {
        a.retained.add(dec.retained_states);
        a.retained_count += 1;
        if (!dec.contains(state.bits)) a.pred_errors += 1;
      }
    }
  }

  RunMetrics out;
  out.seed = seed;
  out.policies.reserve(runners.size());
  for (const PolicyRunner& r : runners) out.policies.push_back(finalize(r.acc, r.name));
  return out;
}

std::vector<RunMetrics> run_repetitions(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<RunMetrics> results(cfg.repetitions);
  int workers = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, cfg.repetitions);

  auto work = [&](int first) {
    for (int i = first; i < cfg.repetitions; i += workers) {
      results[i] = run_scenario(cfg, repetition_seed(cfg.seed, i));
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& t : pool) t.join();
  }
  return results;
}

RunMetrics aggregate(std::span<const RunMetrics> reps) {
  if (reps.empty()) throw std::invalid_argument("nothing to aggregate");
  RunMetrics out;
  out.seed = reps.front().seed;
  const std::size_t n_pol = reps.front().policies.size();
  for (std::size_t p = 0; p < n_pol; ++p) {
    Kahan harvest, rho, d0, retained;
    long symbols = 0, violations = 0, errors = 0, d0_count = 0, retained_count = 0;
    double wall = 0.0;
    for (const RunMetrics& r : reps) {
      const PolicyMetrics& m = r.policies.at(p);
      harvest.add(m.mean_harvest_w * m.symbols);
      rho.add(m.mean_rho * m.symbols);
      violations += std::lround(m.violation_fraction * m.symbols);
      d0.add(m.mean_d0 * m.d0_symbols);
      retained.add(m.mean_retained_states * m.retained_symbols);
      symbols += m.symbols;
      errors += m.prediction_errors;
      d0_count += m.d0_symbols;
      retained_count += m.retained_symbols;
      wall += m.wall_ms;
    }
    PolicyMetrics m;
    m.name = reps.front().policies[p].name;
    m.symbols = symbols;
    m.mean_harvest_w = symbols > 0 ? harvest.sum / symbols : 0.0;
    m.mean_harvest_dbuw = watts_to_dbuw(m.mean_harvest_w);
    m.mean_rho = symbols > 0 ? rho.sum / symbols : 0.0;
    m.violation_fraction = symbols > 0 ? static_cast<double>(violations) / symbols : 0.0;
    m.mean_d0 = d0_count > 0 ? d0.sum / d0_count : 0.0;
    m.mean_retained_states = retained_count > 0 ? retained.sum / retained_count : 0.0;
    m.prediction_errors = errors;
    m.d0_symbols = d0_count;
    m.retained_symbols = retained_count;
    m.wall_ms = wall;
    out.policies.push_back(std::move(m));
  }
  return out;
}

RunMetrics run_many(const ScenarioConfig& cfg) {
  const std::vector<RunMetrics> reps = run_repetitions(cfg);
  RunMetrics agg = aggregate(reps);
  agg.seed = cfg.seed;
  return agg;
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "N" || name == "nodes") return SweepAxis::Nodes;
  if (name == "p") return SweepAxis::P;
  if (name == "L") return SweepAxis::L;
  if (name == "D") return SweepAxis::D;
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "none" || name.empty()) return SweepAxis::None;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::None: return "none";
    case SweepAxis::Nodes: return "N";
    case SweepAxis::P: return "p";
    case SweepAxis::L: return "L";
    case SweepAxis::D: return "D";
    case SweepAxis::Alpha: return "alpha";
  }
  return "?";
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case SweepAxis::None:
      break;
    case SweepAxis::Nodes: {
      const int n = static_cast<int>(value);
      if (n < 1 || n != value) throw std::invalid_argument("N must be a positive integer");
      const NodeProfile tmpl = base.profiles.empty() ? NodeProfile{} : base.profiles.front();
      cfg.nodes = n;
      cfg.profiles.assign(n, tmpl);
      break;
    }
    case SweepAxis::P:
      for (NodeProfile& p : cfg.profiles) p.p = value;
      break;
    case SweepAxis::L: {
      const int l = static_cast<int>(value);
      if (l < 1 || l != value) throw std::invalid_argument("L must be a positive integer");
      for (NodeProfile& p : cfg.profiles) p.L = l;
      break;
    }
    case SweepAxis::D: {
      const int d = static_cast<int>(value);
      if (d < 1 || d != value) throw std::invalid_argument("D must be a positive integer");
      for (PredictorPolicy& p : cfg.policies)
        if (p.kind == PolicyKind::Bbp) p.block_len = d;
      break;
    }
    case SweepAxis::Alpha:
      if (value < 0.0) throw std::invalid_argument("alpha must be >= 0");
      cfg.csi_alpha = value;
      break;
  }
  return cfg;
}

SweepResult sweep(const ScenarioConfig& base, SweepAxis axis, std::span<const double> values) {
  SweepResult result;
  result.axis = axis;
  if (axis == SweepAxis::None) {
    result.rows.push_back({0.0, run_many(base)});
    return result;
  }
  for (double v : values) {
    const ScenarioConfig cfg = apply_axis(base, axis, v);
    result.rows.push_back({v, run_many(cfg)});
  }
  return result;
}

double average_active_nodes(std::span<const NodeProfile> profiles) {
  double sum = 0.0;
  for (const NodeProfile& p : profiles) sum += duty_cycle(p);
  return sum;
}

const LabeledPoint& jd_detect(std::complex<double> post_split_sample,
                              const LabeledConstellation& c, double rho) {
  if (c.points.empty()) throw std::invalid_argument("empty constellation");
  const double amp = std::sqrt(rho);
  std::size_t best = 0;
  double best_d2 = std::norm(amp * c.points[0].value - post_split_sample);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    const double d2 = std::norm(amp * c.points[i].value - post_split_sample);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return c.points[best];
}

}  // namespace swipt

#include <benchmark/benchmark.h>

#include "swipt/constellation.hpp"
#include "swipt/predictor.hpp"
#include "swipt/rng.hpp"
#include "swipt/sim.hpp"

namespace {

std::vector<std::complex<double>> random_gains(int n, std::uint64_t seed) {
  swipt::Rng rng(seed);
  std::vector<std::complex<double>> h(n);
  for (auto& g : h) g = rng.cgaussian(1e-5);
  return h;
}

void bm_min_distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = random_gains(n, 7);
  const auto c = swipt::baseline_constellation(h, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(swipt::min_distance(c));
  }
  state.SetLabel(std::to_string(c.points.size()) + " pts");
}
BENCHMARK(bm_min_distance)->DenseRange(4, 12, 2);

void bm_sbp_decide(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  swipt::ScenarioConfig cfg;
  cfg.nodes = n;
  cfg.profiles.assign(n, {0.1, 20});
  const auto h = random_gains(n, 7);
  swipt::ConstellationBank bank(h, cfg.p_t_w);
  swipt::PredictorPolicy pol{swipt::PolicyKind::Sbp};
  swipt::SbpPredictor pred(cfg.profiles, bank, cfg.noise, cfg.reliability, pol);
  swipt::Rng rng(11);
  for (auto _ : state) {
    auto dec = pred.decide();
    benchmark::DoNotOptimize(dec);
    std::uint32_t bits = 0;
    for (int k = 0; k < n; ++k) bits |= static_cast<std::uint32_t>(rng.bernoulli(0.2)) << k;
    pred.observe(swipt::ActivityState{bits, n});
  }
}
BENCHMARK(bm_sbp_decide)->DenseRange(4, 8, 2);

}  // namespace

BENCHMARK_MAIN();

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "swipt/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"SWIPT relay power-splitting simulator"};
  app.require_subcommand(1);

  swipt::RunOptions opts;
  std::string config_path, sweep, policies;
  std::uint64_t seed = 0;
  int reps = 0, symbols = 0, threads = 0;

  CLI::App* run = app.add_subcommand("run", "Run a scenario or a parameter sweep");
  run->add_option("--config", config_path, "JSON scenario config (defaults apply if omitted)");
  run->add_option("--sweep", sweep, "Sweep axis, e.g. N=2..8 or alpha=0,1e-4,1e-3,1e-2");
  run->add_option("--policies", policies, "Comma list: baseline,genie,sbp,bbp<D>");
  auto* seed_opt = run->add_option("--seed", seed, "Master RNG seed");
  auto* reps_opt = run->add_option("--reps", reps, "Monte Carlo repetitions per point");
  auto* symbols_opt = run->add_option("--symbols", symbols, "Measured symbols per repetition");
  auto* threads_opt = run->add_option("--threads", threads, "Worker threads");
  run->add_flag("--full", opts.full, "Full-scale run (5000 repetitions)");
  run->add_flag("--csi", opts.csi, "Keep the configured CSI error (off forces csi_alpha = 0)");
  run->add_option("--out", opts.out, "Output CSV path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) opts.config_path = config_path;
  if (!sweep.empty()) opts.sweep = sweep;
  if (!policies.empty()) opts.policies = policies;
  if (*seed_opt) opts.seed = seed;
  if (*reps_opt) opts.reps = reps;
  if (*symbols_opt) opts.symbols = symbols;
  if (*threads_opt) opts.threads = threads;

  try {
    return swipt::run_command(opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

#include <iostream>

#include <CLI11.hpp>

#include "eulersel/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ensemble selection for 1D compressible Euler flows"};
  app.require_subcommand(1);

  std::string config_path, out_dir, run_dir;
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--jobs", jobs, "worker threads for candidate runs");
    cmd->add_option("--seed", seed, "seed for randomized sampling")->each([&](const std::string&) {
      seed_set = true;
    });
  };

  auto* simulate = app.add_subcommand("simulate", "run one trajectory and emit diagnostics");
  add_common(simulate, true);
  auto* select = app.add_subcommand("select", "run the ensemble and both selection procedures");
  add_common(select, true);
  auto* verify = app.add_subcommand("verify", "check the weak-form conditions for every candidate");
  add_common(verify, true);
  auto* semigroup = app.add_subcommand("semigroup", "restart-consistency check of the selection");
  add_common(semigroup, true);
  auto* plot = app.add_subcommand("plot", "render SVG plots from a finished run directory");
  plot->add_option("run_dir", run_dir, "directory with diagnostics CSVs")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(plot)) return eulersel::cmd_plot(run_dir);

    eulersel::ExperimentConfig cfg = eulersel::load_config(config_path);
    if (jobs > 0) cfg.jobs = jobs;
    if (seed_set) cfg.seed = seed;
    const std::filesystem::path out = out_dir.empty() ? cfg.output.dir : out_dir;

    if (app.got_subcommand(simulate)) return eulersel::cmd_simulate(cfg, out);
    if (app.got_subcommand(select)) return eulersel::cmd_select(cfg, out);
    if (app.got_subcommand(verify)) return eulersel::cmd_verify(cfg, out);
    if (app.got_subcommand(semigroup)) return eulersel::cmd_semigroup(cfg, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

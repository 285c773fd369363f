#pragma once

// Experiment commands behind the CLI: simulate one trajectory, run the
// selection pipeline over an ensemble, verify the weak-form conditions,
// check restart consistency of the selection, and render plots. Each command
// writes its artifacts under `out_dir` and returns a process exit code.

#include "eulersel/config.hpp"

namespace eulersel {

int cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_select(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_semigroup(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);
int cmd_plot(const std::filesystem::path& run_dir);

} // namespace eulersel

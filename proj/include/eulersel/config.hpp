#pragma once

// Experiment configuration: one JSON file describing gas, grid, initial data
// preset, energy budget, the solver variation matrix, lift events, quadrature
// and selection knobs. All defaults live here.

#include <cstdint>
#include <filesystem>

#include "eulersel/concat.hpp"
#include "eulersel/functionals.hpp"
#include "eulersel/selection.hpp"

namespace eulersel {

struct InitialSpec {
  std::string preset = "constant"; // constant | sod | acoustic_pulse | custom
  // constant
  double rho = 1.0, u = 0.0, theta = 1.0;
  // acoustic_pulse
  double amplitude = 0.05, width = 0.1, center = 0.5;
  // custom
  std::string file;
};

struct EnergyBudget {
  std::string mode = "initial"; // initial | absolute | excess
  double value = 0.0;
};

struct SelectionCfg {
  std::vector<SelectionMethod> methods{SelectionMethod::two_step, SelectionMethod::one_step};
  double eps_tie = 1e-8;
  int close_convex_hull = 0;
  double q = 0.0; // 0 = default 2*gamma/(gamma+1)
};

struct SemigroupCfg {
  double tau = 0.5;
  double tol = 1e-8;
};

struct OutputCfg {
  std::string dir = "out";
  bool save_states = false;
};

struct ExperimentConfig {
  GasParams gas{1.4};
  Grid1D grid{100, 0.0, 1.0};
  InitialSpec initial;
  EnergyBudget budget;
  std::string s_floor_mode = "auto"; // auto | value
  double s_floor_value = 0.0;
  SolverConfig base;
  std::vector<FluxType> fluxes{FluxType::rusanov};
  std::vector<double> viscosities{0.0};
  std::vector<LiftEvent> lifts;
  QuadratureSpec quad;
  SelectionCfg selection;
  SemigroupCfg semigroup;
  OutputCfg output;
  std::uint64_t seed = 0;
  int jobs = 1;

  double selection_q() const {
    return selection.q > 0.0 ? selection.q : 2.0 * gas.gamma / (gas.gamma + 1.0);
  }
};

ExperimentConfig load_config(const std::filesystem::path& path);

FluidState make_initial_state(const ExperimentConfig& cfg);

// Resolves preset, budget and entropy floor into a DataSpec; throws with the
// violation report if the result is outside the data space.
DataSpec build_data_spec(const ExperimentConfig& cfg);

// Cartesian product fluxes x viscosities, sharing the base time parameters.
std::vector<SolverConfig> solver_matrix(const ExperimentConfig& cfg);

} // namespace eulersel

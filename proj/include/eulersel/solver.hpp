#pragma once

// First-order finite-volume scheme for the 1D Euler system with reflective
// (impermeable) walls. Evolves conservative variables (rho, m, total energy
// per cell); the entropy density is derived from (rho, theta) at output
// instants and its inequality is verified a posteriori.

#include <string>

#include "eulersel/field.hpp"

namespace eulersel {

enum class FluxType { rusanov, lax_friedrichs, hll };

const char* flux_name(FluxType f);
FluxType flux_from_name(const std::string& name);

struct SolverConfig {
  FluxType flux = FluxType::rusanov;
  double cfl = 0.45;       // in (0, 0.95]
  double art_visc = 0.0;   // Laplacian coefficient on the conservative variables
  double t_end = 1.0;
  double out_dt = 0.01;    // macro sampling interval, must divide t_end
  double rho_floor = 1e-10;

  std::string label() const;
};

void check_solver_config(const SolverConfig& cfg);

struct StepResult {
  FluidState state;
  double dt = 0.0;
};

// One conservative update with the CFL time step (no macro clipping).
StepResult step(const FluidState& s, const SolverConfig& cfg, const GasParams& gp);

// Integrate the initial data of `spec` to t_end, sampling every out_dt.
// The returned trajectory carries spec.E0 and the initial total mass and
// passes validate().
Trajectory run(const DataSpec& spec, const SolverConfig& cfg, const GasParams& gp);

} // namespace eulersel

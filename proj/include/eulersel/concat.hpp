#pragma once

// Trajectory concatenation and the entropy lift: a temperature rescaling
// theta -> (1+lambda)*theta that converts an energy defect delta into an
// entropy jump while restoring the energy budget, with
// lambda = delta / (cv * integral of rho*theta).

#include "eulersel/solver.hpp"

namespace eulersel {

struct LiftEvent {
  double tau = 0.0;   // lift instant, must be a sample time
  double delta = 0.0; // energy consumed; ignored when all = true
  bool all = true;    // consume the full defect at tau
};

// Joins `a` on [0, T1] with `b` time-shifted onto (T1, T1 + t_end_b].
// Requires matching density/momentum at the seam (1e-10), entropy of b's
// initial state at or above a's, and equal budgets. The result inherits
// a's E0, M0 and passes validate().
Trajectory concatenate(const Trajectory& a, double T1, const Trajectory& b);

struct LiftResult {
  FluidState state;
  double lambda = 0.0;
  double delta = 0.0;
};

// Raises the mean energy of `s` to exactly `E_target` by a uniform
// temperature rescaling, keeping (rho, m). Postconditions are asserted:
// exact budget (1e-12 relative), lambda >= delta/E_target, and an entropy
// gain of at least cv*log(1 + delta/E_target)*mass.
LiftResult entropy_lift(const FluidState& s, double E_target, const GasParams& gp);

// Lift `traj` at ev.tau and continue with the same solver configuration;
// the result samples the same macro instants as `traj`.
Trajectory lift_and_continue(const Trajectory& traj, const LiftEvent& ev,
                             const SolverConfig& cfg, const GasParams& gp);

} // namespace eulersel

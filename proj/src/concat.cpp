#include "eulersel/concat.hpp"

#include <cmath>
#include <cstdio>

namespace eulersel {

Trajectory concatenate(const Trajectory& a, double T1, const Trajectory& b) {
  const int k1 = a.index_of_time(T1);
  const FluidState& seam = a.states[k1];
  const FluidState& b0 = b.states[0];
  if (!same_grid(seam.grid, b0.grid))
    throw std::invalid_argument("concatenate: grids differ");
  if (std::abs(a.out_dt() - b.out_dt()) > 1e-12 * a.out_dt())
    throw std::invalid_argument("concatenate: sampling intervals differ");
  if (std::abs(a.E0 - b.E0) > 1e-12 * std::max(1.0, std::abs(a.E0)))
    throw std::invalid_argument("concatenate: energy budgets differ");

  char buf[160];
  for (int i = 0; i < seam.n(); ++i) {
    const double tol = 1e-10;
    if (std::abs(seam.rho[i] - b0.rho[i]) > tol * std::max(1.0, std::abs(seam.rho[i]))) {
      std::snprintf(buf, sizeof(buf),
                    "concatenate: density mismatch at cell %d (%.17g vs %.17g)", i, seam.rho[i],
                    b0.rho[i]);
      throw std::invalid_argument(buf);
    }
    if (std::abs(seam.m[i] - b0.m[i]) > tol * std::max(1.0, std::abs(seam.m[i]))) {
      std::snprintf(buf, sizeof(buf),
                    "concatenate: momentum mismatch at cell %d (%.17g vs %.17g)", i, seam.m[i],
                    b0.m[i]);
      throw std::invalid_argument(buf);
    }
    if (b0.S[i] < seam.S[i] - tol) {
      std::snprintf(buf, sizeof(buf),
                    "concatenate: entropy drops at cell %d (%.17g below %.17g)", i, b0.S[i],
                    seam.S[i]);
      throw std::invalid_argument(buf);
    }
  }

  Trajectory out;
  out.E0 = a.E0;
  out.M0 = a.M0;
  out.meta = a.meta;
  std::snprintf(buf, sizeof(buf), "concat@%g", T1);
  out.meta.events.push_back(buf);
  for (const auto& ev : b.meta.events) out.meta.events.push_back(ev);
  out.times.assign(a.times.begin(), a.times.begin() + k1 + 1);
  out.states.assign(a.states.begin(), a.states.begin() + k1 + 1);
  for (size_t j = 1; j < b.times.size(); ++j) {
    out.times.push_back(T1 + b.times[j]);
    out.states.push_back(b.states[j]);
  }
  return out;
}

LiftResult entropy_lift(const FluidState& s, double E_target, const GasParams& gp) {
  const double mean = mean_energy(s, gp);
  const double scale = std::max(1.0, std::abs(E_target));
  const double delta = E_target - mean;
  if (delta < -1e-10 * scale)
    throw std::invalid_argument("entropy_lift: state energy exceeds the target budget");
  if (delta <= 1e-13 * scale) return {s, 0.0, 0.0}; // nothing to consume

  double rho_theta = 0.0;
  std::vector<double> theta(s.n());
  for (int i = 0; i < s.n(); ++i) {
    theta[i] = temperature(gp, s.rho[i], s.S[i]);
    rho_theta += s.rho[i] * theta[i];
  }
  rho_theta *= s.grid.dx;
  const double lambda = delta / (gp.cv * rho_theta);

  FluidState out = s;
  for (int i = 0; i < s.n(); ++i)
    out.S[i] = entropy_of(gp, s.rho[i], (1.0 + lambda) * theta[i]);

  // Postconditions of the construction.
  const double mean_out = mean_energy(out, gp);
  if (std::abs(mean_out - E_target) > 1e-12 * scale)
    throw std::logic_error("entropy_lift: lifted energy misses the target");
  if (!(lambda >= delta / E_target))
    throw std::logic_error("entropy_lift: lambda below delta/E_target");
  const double mass = total_mass(s);
  const double gain = total_entropy(out) - total_entropy(s);
  if (gain < gp.cv * std::log1p(delta / E_target) * mass - 1e-10)
    throw std::logic_error("entropy_lift: entropy gain below the guaranteed bound");
  return {std::move(out), lambda, delta};
}

Trajectory lift_and_continue(const Trajectory& traj, const LiftEvent& ev,
                             const SolverConfig& cfg, const GasParams& gp) {
  const int k = traj.index_of_time(ev.tau);
  if (k == traj.n_samples() - 1)
    throw std::invalid_argument("lift_and_continue: no time left after the lift instant");
  if (k == 0) throw std::invalid_argument("lift_and_continue: lift instant must be positive");

  const FluidState& at_tau = traj.states[k];
  const double mean = mean_energy(at_tau, gp);
  const double current_defect = traj.E0 - mean;
  double delta = ev.all ? std::max(current_defect, 0.0) : ev.delta;
  if (delta < 0.0) throw std::invalid_argument("lift_and_continue: negative lift delta");
  if (delta > current_defect + 1e-10 * std::max(1.0, traj.E0))
    throw std::invalid_argument("lift_and_continue: delta exceeds the defect at tau");

  const auto lift = entropy_lift(at_tau, mean + delta, gp);

  DataSpec cont;
  cont.initial = lift.state;
  cont.E0 = traj.E0;
  double s_min = lift.state.S[0] / lift.state.rho[0];
  for (int i = 1; i < lift.state.n(); ++i)
    s_min = std::min(s_min, lift.state.S[i] / lift.state.rho[i]);
  cont.s_floor = s_min;

  SolverConfig cfg2 = cfg;
  cfg2.t_end = traj.times.back() - ev.tau;
  Trajectory cont_traj = run(cont, cfg2, gp);

  Trajectory out = concatenate(traj, ev.tau, cont_traj);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "lift@%g delta=%.6g lambda=%.6g", ev.tau, lift.delta,
                lift.lambda);
  out.meta.events.push_back(buf);
  validate_or_throw(out, gp);
  return out;
}

} // namespace eulersel

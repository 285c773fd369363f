#pragma once

// Selection cost functionals: exp(-t)-discounted integrals of the total
// entropy and the mean energy, their combination F_D, and the constant
// equilibrium state they are measured against.

#include <span>
#include <vector>

#include "eulersel/field.hpp"

namespace eulersel {

enum class QuadRule { trapezoid, left_riemann };

struct QuadratureSpec {
  double t_max = 10.0;
  QuadRule rule = QuadRule::trapezoid;
};

struct Weighted {
  double value = 0.0;
  double tail_bound = 0.0; // exp(-horizon) * max |series|
};

// Quadrature of exp(-t)*series over [0, t_max] on the uniform grid t_k = k*dt.
// The horizon snaps down to the sample grid; the neglected tail is reported,
// never assumed zero. Requires t_last >= t_max.
Weighted weighted_integral(std::span<const double> series, double dt, const QuadratureSpec& qs);

// Quadrature weights (including the exp(-t_k) factor) for the first n_used
// nodes; shared by the functionals and the trajectory distance.
std::vector<double> quad_weights(int n_used, double dt, QuadRule rule);

// Number of nodes 0..K entering the quadrature for the given horizon.
int quad_nodes(int n_samples, double dt, double t_max);

Weighted F_S(const Trajectory& traj, const QuadratureSpec& qs);
Weighted F_E(const Trajectory& traj, const QuadratureSpec& qs, const GasParams& gp);
// F_E - theta_bar * F_S with theta_bar = E0 / (cv * M0).
Weighted F_D(const Trajectory& traj, const QuadratureSpec& qs, const GasParams& gp);

// rho_bar = M0/|Omega|, theta_bar = E0/(cv*M0).
Equilibrium equilibrium(const DataSpec& spec, const GasParams& gp, double domain_length);
Equilibrium equilibrium_from(double M0, double E0, double domain_length, const GasParams& gp);

// Uniform sample spacing of a trajectory; throws if the grid is not uniform.
double uniform_dt(const Trajectory& traj);

std::vector<double> entropy_series(const Trajectory& traj);
std::vector<double> energy_series(const Trajectory& traj, const GasParams& gp);

} // namespace eulersel

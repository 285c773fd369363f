#include "eulersel/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace eulersel {

int quad_nodes(int n_samples, double dt, double t_max) {
  if (n_samples < 2) throw std::invalid_argument("weighted_integral: need at least two samples");
  const double t_last = (n_samples - 1) * dt;
  if (t_last < t_max - 1e-9 * std::max(1.0, t_max))
    throw std::invalid_argument("weighted_integral: series ends before the quadrature horizon");
  int K = static_cast<int>(std::floor(t_max / dt + 1e-9));
  K = std::min(K, n_samples - 1);
  return K + 1;
}

std::vector<double> quad_weights(int n_used, double dt, QuadRule rule) {
  std::vector<double> w(n_used);
  for (int k = 0; k < n_used; ++k) {
    double base = dt;
    if (rule == QuadRule::trapezoid && (k == 0 || k == n_used - 1)) base = 0.5 * dt;
    if (rule == QuadRule::left_riemann && k == n_used - 1) base = 0.0;
    w[k] = base * std::exp(-k * dt);
  }
  return w;
}

Weighted weighted_integral(std::span<const double> series, double dt, const QuadratureSpec& qs) {
  if (!(dt > 0.0)) throw std::invalid_argument("weighted_integral: dt must be positive");
  const int n_used = quad_nodes(static_cast<int>(series.size()), dt, qs.t_max);
  const auto w = quad_weights(n_used, dt, qs.rule);
  double value = 0.0;
  for (int k = 0; k < n_used; ++k) value += w[k] * series[k];
  double sup = 0.0;
  for (double v : series) sup = std::max(sup, std::abs(v));
  const double horizon = (n_used - 1) * dt;
  return {value, std::exp(-horizon) * sup};
}

double uniform_dt(const Trajectory& traj) {
  if (traj.times.size() < 2) throw std::invalid_argument("uniform_dt: too few samples");
  const double dt = traj.times[1] - traj.times[0];
  for (size_t k = 1; k < traj.times.size(); ++k) {
    const double expected = k * dt;
    if (std::abs(traj.times[k] - expected) > 1e-9 * std::max(1.0, expected))
      throw std::invalid_argument("uniform_dt: sample instants are not uniform");
  }
  return dt;
}

std::vector<double> entropy_series(const Trajectory& traj) {
  std::vector<double> s(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) s[k] = total_entropy(traj.states[k]);
  return s;
}

std::vector<double> energy_series(const Trajectory& traj, const GasParams& gp) {
  std::vector<double> e(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) e[k] = mean_energy(traj.states[k], gp);
  return e;
}

Weighted F_S(const Trajectory& traj, const QuadratureSpec& qs) {
  return weighted_integral(entropy_series(traj), uniform_dt(traj), qs);
}

Weighted F_E(const Trajectory& traj, const QuadratureSpec& qs, const GasParams& gp) {
  return weighted_integral(energy_series(traj, gp), uniform_dt(traj), qs);
}

Weighted F_D(const Trajectory& traj, const QuadratureSpec& qs, const GasParams& gp) {
  if (!(traj.M0 > 0.0)) throw std::invalid_argument("F_D: total mass must be positive");
  const double theta_bar = traj.E0 / (gp.cv * traj.M0);
  const auto fs = F_S(traj, qs);
  const auto fe = F_E(traj, qs, gp);
  return {fe.value - theta_bar * fs.value, fe.tail_bound + theta_bar * fs.tail_bound};
}

Equilibrium equilibrium_from(double M0, double E0, double domain_length, const GasParams& gp) {
  if (!(M0 > 0.0)) throw std::invalid_argument("equilibrium: total mass must be positive");
  if (!(E0 > 0.0)) throw std::invalid_argument("equilibrium: energy budget must be positive");
  if (!(domain_length > 0.0)) throw std::invalid_argument("equilibrium: empty domain");
  return Equilibrium(gp, M0 / domain_length, E0 / (gp.cv * M0));
}

Equilibrium equilibrium(const DataSpec& spec, const GasParams& gp, double domain_length) {
  return equilibrium_from(total_mass(spec.initial), spec.E0, domain_length, gp);
}

} // namespace eulersel

#include "eulersel/thermo.hpp"

namespace eulersel {

std::optional<double> pressure(const GasParams& gp, double rho, double S) {
  if (std::isnan(rho) || std::isnan(S)) throw std::invalid_argument("pressure: NaN input");
  if (rho < 0.0) throw std::invalid_argument("pressure: negative density");
  if (rho > 0.0) return std::pow(rho, gp.gamma) * std::exp(S / (gp.cv * rho));
  if (S <= 0.0) return 0.0;
  return std::nullopt; // vacuum with positive entropy: infinite branch
}

double temperature(const GasParams& gp, double rho, double S) {
  if (!(rho > 0.0)) throw std::invalid_argument("temperature: density must be positive");
  return std::pow(rho, gp.gamma - 1.0) * std::exp(S / (gp.cv * rho));
}

double entropy_of(const GasParams& gp, double rho, double theta) {
  if (!(rho > 0.0) || !(theta > 0.0))
    throw std::invalid_argument("entropy_of: rho and theta must be positive");
  return rho * (gp.cv * std::log(theta) - std::log(rho));
}

std::optional<double> total_energy(const GasParams& gp, const StatePoint& p) {
  if (std::isnan(p.rho) || std::isnan(p.S) || std::isnan(p.m[0]) || std::isnan(p.m[1]) ||
      std::isnan(p.m[2]))
    throw std::invalid_argument("total_energy: NaN input");
  if (p.rho < 0.0) throw std::invalid_argument("total_energy: negative density");
  if (p.rho > 0.0)
    return 0.5 * p.m_sq() / p.rho + gp.cv * p.rho * temperature(gp, p.rho, p.S);
  if (p.m_zero() && p.S <= 0.0) return 0.0;
  return std::nullopt;
}

double bregman_energy(const GasParams& gp, const StatePoint& p, const Equilibrium& eq) {
  const auto E_p = total_energy(gp, p);
  if (!E_p) throw std::domain_error("bregman_energy: state outside the energy domain");
  const double p_bar = (gp.gamma - 1.0) * gp.cv * eq.rho_bar * eq.theta_bar;
  const double S_bar = eq.rho_bar * eq.s_bar;
  const double drho_coeff = gp.cv * eq.theta_bar - eq.theta_bar * eq.s_bar + p_bar / eq.rho_bar;
  return *E_p - drho_coeff * (p.rho - eq.rho_bar) - eq.theta_bar * (p.S - S_bar) -
         eq.rho_bar * gp.cv * eq.theta_bar;
}

bool check_convexity(const GasParams& gp, const StatePoint& a, const StatePoint& b, double tol) {
  const auto E_a = total_energy(gp, a);
  const auto E_b = total_energy(gp, b);
  if (!E_a || !E_b) throw std::domain_error("check_convexity: state outside the energy domain");
  StatePoint mid(0.5 * (a.rho + b.rho),
                 std::array<double, 3>{0.5 * (a.m[0] + b.m[0]), 0.5 * (a.m[1] + b.m[1]),
                                       0.5 * (a.m[2] + b.m[2])},
                 0.5 * (a.S + b.S));
  const auto E_mid = total_energy(gp, mid);
  if (!E_mid) return false;
  return *E_mid <= 0.5 * (*E_a + *E_b) + tol;
}

double r_coeff(int d, const GasParams& gp) {
  if (d < 1 || d > 3) throw std::invalid_argument("r_coeff: dimension must be 1, 2 or 3");
  return std::min(0.5, static_cast<double>(d) * gp.gamma / (gp.gamma - 1.0));
}

} // namespace eulersel

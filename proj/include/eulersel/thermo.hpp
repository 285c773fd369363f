#pragma once

// Pure state functions of the polytropic gas: pressure, temperature,
// entropy density, total energy and its Bregman divergence relative to a
// constant equilibrium. All quantities are per unit volume; S denotes the
// total entropy density rho*s.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace eulersel {

struct GasParams {
  double gamma; // adiabatic exponent, > 1
  double cv;    // specific heat, always 1/(gamma - 1)

  explicit GasParams(double gamma_ = 1.4) : gamma(gamma_), cv(1.0 / (gamma_ - 1.0)) {
    if (!(gamma_ > 1.0)) throw std::invalid_argument("GasParams: gamma must exceed 1");
  }
};

// One thermodynamic state (rho, m, S). Momentum always carries three
// components; unused ones stay zero, the active dimension only matters for
// r_coeff.
struct StatePoint {
  double rho = 0.0;
  std::array<double, 3> m{0.0, 0.0, 0.0};
  double S = 0.0;

  StatePoint() = default;
  StatePoint(double rho_, double m_x, double S_) : rho(rho_), m{m_x, 0.0, 0.0}, S(S_) {}
  StatePoint(double rho_, const std::array<double, 3>& m_, double S_) : rho(rho_), m(m_), S(S_) {}

  double m_sq() const { return m[0] * m[0] + m[1] * m[1] + m[2] * m[2]; }
  bool m_zero() const { return m[0] == 0.0 && m[1] == 0.0 && m[2] == 0.0; }
};

// Constant equilibrium state; s_bar is derived, never set independently.
struct Equilibrium {
  double rho_bar;
  double theta_bar;
  double s_bar; // cv*log(theta_bar) - log(rho_bar)

  Equilibrium(const GasParams& gp, double rho_bar_, double theta_bar_)
      : rho_bar(rho_bar_), theta_bar(theta_bar_),
        s_bar(gp.cv * std::log(theta_bar_) - std::log(rho_bar_)) {
    if (!(rho_bar_ > 0.0) || !(theta_bar_ > 0.0))
      throw std::invalid_argument("Equilibrium: rho_bar and theta_bar must be positive");
  }
};

// p(rho, S). Empty optional encodes the infinite branch (rho == 0, S > 0),
// i.e. the point lies outside the energy domain.
std::optional<double> pressure(const GasParams& gp, double rho, double S);

// theta from (rho, S); inverse of entropy_of in its second argument.
double temperature(const GasParams& gp, double rho, double S);

// S = rho*(cv*log(theta) - log(rho)).
double entropy_of(const GasParams& gp, double rho, double theta);

// Total energy density E = |m|^2/(2 rho) + cv*rho*theta. Empty optional is
// the +infinity marker (vacuum with nonzero momentum or positive entropy).
std::optional<double> total_energy(const GasParams& gp, const StatePoint& p);

// Bregman divergence of the total energy between p and the equilibrium
// point (rho_bar, 0, rho_bar*s_bar). Nonnegative, zero only at the base point.
double bregman_energy(const GasParams& gp, const StatePoint& p, const Equilibrium& eq);

// Midpoint convexity test: E((a+b)/2) <= (E(a)+E(b))/2 + tol.
bool check_convexity(const GasParams& gp, const StatePoint& a, const StatePoint& b,
                     double tol = 1e-12);

// Coefficient of the concentration trace in the energy compatibility
// condition: min{1/2, d*gamma/(gamma-1)}.
double r_coeff(int d, const GasParams& gp);

} // namespace eulersel

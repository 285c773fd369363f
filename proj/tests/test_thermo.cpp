#include <doctest.h>

#include <random>

#include "eulersel/thermo.hpp"

using namespace eulersel;

namespace {

// Independent route: generic Bregman construction E(p) - E(q) - grad E(q).(p-q)
// with the gradient taken by central finite differences.
double bregman_fd(const GasParams& gp, const StatePoint& p, const Equilibrium& eq) {
  const StatePoint q(eq.rho_bar, 0.0, eq.rho_bar * eq.s_bar);
  const double h = 1e-6;
  auto E = [&](const StatePoint& s) { return *total_energy(gp, s); };
  const double dE_drho =
      (E(StatePoint(q.rho + h, 0.0, q.S)) - E(StatePoint(q.rho - h, 0.0, q.S))) / (2 * h);
  const double dE_dm = (E(StatePoint(q.rho, h, q.S)) - E(StatePoint(q.rho, -h, q.S))) / (2 * h);
  const double dE_dS =
      (E(StatePoint(q.rho, 0.0, q.S + h)) - E(StatePoint(q.rho, 0.0, q.S - h))) / (2 * h);
  return E(p) - E(q) - dE_drho * (p.rho - q.rho) - dE_dm * (p.m[0] - q.m[0]) -
         dE_dS * (p.S - q.S);
}

StatePoint random_state(std::mt19937_64& rng, const GasParams& gp) {
  std::uniform_real_distribution<double> rho_d(0.3, 3.0), theta_d(0.3, 3.0), m_d(-2.0, 2.0);
  const double rho = rho_d(rng);
  return StatePoint(rho, m_d(rng), entropy_of(gp, rho, theta_d(rng)));
}

} // namespace

TEST_CASE("gas parameters derive cv from gamma") {
  const GasParams gp(1.4);
  CHECK(gp.cv == doctest::Approx(2.5).epsilon(1e-15));
  CHECK_THROWS_AS(GasParams(1.0), std::invalid_argument);
  CHECK_THROWS_AS(GasParams(0.5), std::invalid_argument);
}

TEST_CASE("pressure follows the piecewise closed form") {
  const GasParams gp(1.4);
  CHECK(*pressure(gp, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*pressure(gp, 0.0, -1.0) == 0.0);
  CHECK(*pressure(gp, 0.0, 0.0) == 0.0);
  CHECK(*pressure(gp, 2.0, 0.0) ==
        doctest::Approx(2.6390158215457885).epsilon(1e-14)); // 2^1.4
  CHECK_FALSE(pressure(gp, 0.0, 0.5).has_value());
  CHECK_THROWS_AS(pressure(gp, -1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(pressure(gp, std::nan(""), 0.0), std::invalid_argument);
}

TEST_CASE("temperature inverts the entropy identity") {
  const GasParams gp(1.4);
  CHECK(temperature(gp, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(temperature(gp, 2.0, 0.0) ==
        doctest::Approx(1.3195079107728943).epsilon(1e-14)); // 2^0.4
  CHECK_THROWS_AS(temperature(gp, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(temperature(gp, -1.0, 0.0), std::invalid_argument);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    const double rho = std::pow(10.0, -6.0 + 12.0 * u(rng));
    const double theta = std::pow(10.0, -6.0 + 12.0 * u(rng));
    const double S = entropy_of(gp, rho, theta);
    CHECK(temperature(gp, rho, S) == doctest::Approx(theta).epsilon(1e-12));
    const double S2 = entropy_of(gp, rho, temperature(gp, rho, S));
    CHECK(std::abs(S2 - S) <= 1e-12 * std::max(1.0, std::abs(S)));
  }
}

TEST_CASE("entropy density closed form") {
  const GasParams gp(1.4);
  CHECK(entropy_of(gp, 1.0, 1.0) == 0.0);
  CHECK(entropy_of(gp, 1.0, std::exp(1.0 / gp.cv)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy_of(gp, 2.0, 1.0) ==
        doctest::Approx(-1.3862943611198906).epsilon(1e-14)); // -2 log 2
  CHECK_THROWS_AS(entropy_of(gp, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(entropy_of(gp, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("total energy and its vacuum convention") {
  const GasParams gp(1.4);
  CHECK(*total_energy(gp, StatePoint(1.0, 0.0, 0.0)) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(*total_energy(gp, StatePoint(0.0, 0.0, 0.0)) == 0.0);
  CHECK(*total_energy(gp, StatePoint(0.0, 0.0, -1.0)) == 0.0);
  CHECK_FALSE(total_energy(gp, StatePoint(0.0, std::array<double, 3>{1.0, 0.0, 0.0}, 0.0))
                  .has_value());
  CHECK_FALSE(total_energy(gp, StatePoint(0.0, 0.0, 0.5)).has_value());

  // strictly increasing in S at fixed rho (the temperature is positive)
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho_d(0.2, 4.0), s_d(-2.0, 2.0);
  for (int it = 0; it < 500; ++it) {
    const double rho = rho_d(rng), S = s_d(rng), h = 1e-5;
    const double lo = *total_energy(gp, StatePoint(rho, 0.0, S - h));
    const double hi = *total_energy(gp, StatePoint(rho, 0.0, S + h));
    CHECK(hi > lo);
  }
}

TEST_CASE("midpoint convexity of the total energy") {
  const GasParams gp(1.4);
  const StatePoint a(1.0, 0.0, 0.0);
  CHECK(check_convexity(gp, a, a, 1e-12));

  // strict inequality for a genuinely different pair
  const StatePoint b(2.0, 0.0, 0.0);
  const double lhs = *total_energy(gp, StatePoint(1.5, 0.0, 0.0));
  const double rhs = 0.5 * (*total_energy(gp, a) + *total_energy(gp, b));
  CHECK(lhs < rhs);

  std::mt19937_64 rng(3);
  for (int it = 0; it < 10000; ++it) {
    const StatePoint p = random_state(rng, gp), q = random_state(rng, gp);
    CHECK(check_convexity(gp, p, q, 1e-12));
  }
}

TEST_CASE("bregman divergence of the energy") {
  const GasParams gp(1.4);
  const Equilibrium eq(gp, 1.3, 0.8);
  const StatePoint base(eq.rho_bar, 0.0, eq.rho_bar * eq.s_bar);
  CHECK(std::abs(bregman_energy(gp, base, eq)) <= 1e-10);

  SUBCASE("nonnegative, zero only at the base point") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 10000; ++it) {
      const StatePoint p = random_state(rng, gp);
      const double d = bregman_energy(gp, p, eq);
      CHECK(d >= -1e-10);
      const double dist = std::abs(p.rho - eq.rho_bar) + std::abs(p.m[0]) +
                          std::abs(p.S - eq.rho_bar * eq.s_bar);
      if (dist > 1e-3) CHECK(d > 0.0);
    }
  }

  SUBCASE("agrees with the finite-difference construction") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 300; ++it) {
      const StatePoint p = random_state(rng, gp);
      const double d = bregman_energy(gp, p, eq);
      const double d_fd = bregman_fd(gp, p, eq);
      CHECK(std::abs(d - d_fd) <= 1e-5 * std::max(1.0, std::abs(d)));
    }
  }

  SUBCASE("kinetic-only perturbation") {
    const double eps = 1e-3, mx = 0.7;
    const StatePoint p(eq.rho_bar, eps * mx, eq.rho_bar * eq.s_bar);
    const double expected = 0.5 * eps * eps * mx * mx / eq.rho_bar;
    CHECK(bregman_energy(gp, p, eq) == doctest::Approx(expected).epsilon(1e-6));
  }

  CHECK_THROWS_AS(bregman_energy(gp, StatePoint(0.0, 1.0, 0.0), eq), std::domain_error);
}

TEST_CASE("concentration coefficient r(d, gamma)") {
  CHECK(r_coeff(1, GasParams(1.4)) == 0.5);
  CHECK(r_coeff(3, GasParams(5.0 / 3.0)) == 0.5);
  CHECK(r_coeff(1, GasParams(1.0 + 1e-9)) == 0.5);
  for (int d = 1; d <= 3; ++d)
    for (double gamma = 1.01; gamma <= 10.0; gamma += 0.07)
      CHECK(r_coeff(d, GasParams(gamma)) == 0.5);
  CHECK_THROWS_AS(r_coeff(0, GasParams(1.4)), std::invalid_argument);
}

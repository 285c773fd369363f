#include <doctest.h>

#include <random>

#include "test_helpers.hpp"

using namespace eulersel;
using namespace eulersel::testing;

TEST_CASE("grid geometry") {
  const Grid1D g(10, 0.0, 2.0);
  CHECK(g.dx == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g.x_center(0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(Grid1D(3, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(10, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("total mass") {
  const GasParams gp;
  const Grid1D g(100, 0.0, 1.0);
  CHECK(total_mass(constant_state(g, gp, 1.0, 0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(total_mass(constant_state(g, gp, 2.0, 0.0, 1.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(total_mass(sod_state(g, gp)) == doctest::Approx(0.5625).epsilon(1e-14));
}

TEST_CASE("total entropy") {
  const GasParams gp;
  const Grid1D g(64, 0.0, 1.0);
  FluidState zero = constant_state(g, gp, 1.0, 0.0, 1.0);
  CHECK(total_entropy(zero) == 0.0);
  const FluidState unit = constant_state(g, gp, 1.0, 0.0, std::exp(1.0 / gp.cv));
  CHECK(total_entropy(unit) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("mean energy") {
  const GasParams gp;
  const Grid1D g(100, 0.0, 1.0);
  CHECK(mean_energy(constant_state(g, gp, 1.0, 0.0, 1.0), gp) ==
        doctest::Approx(gp.cv).epsilon(1e-14));

  // independent summation oracle for the Sod step
  const FluidState sod = sod_state(g, gp);
  double expect = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double theta = temperature(gp, sod.rho[i], sod.S[i]);
    expect += 0.5 * sod.m[i] * sod.m[i] / sod.rho[i] + gp.cv * sod.rho[i] * theta;
  }
  expect *= g.dx;
  CHECK(expect == doctest::Approx(1.375).epsilon(1e-13)); // closed-form half/half sum
  CHECK(mean_energy(sod, gp) == doctest::Approx(expect).epsilon(1e-15));

  FluidState bad = sod;
  bad.rho[3] = 0.0;
  bad.m[3] = 1.0;
  CHECK_THROWS_WITH_AS(mean_energy(bad, gp), doctest::Contains("cell 3"), std::domain_error);
}

TEST_CASE("defect against the budget") {
  const GasParams gp;
  const Grid1D g(50, 0.0, 1.0);
  const FluidState s = constant_state(g, gp, 1.0, 0.0, 1.0);

  Trajectory exact = constant_trajectory(s, gp, 5, 0.1, 0.0);
  CHECK(defect(0, exact, gp).value == doctest::Approx(0.0).epsilon(1e-14));

  Trajectory slack = constant_trajectory(s, gp, 5, 0.1, 0.3);
  for (int k = 0; k < slack.n_samples(); ++k)
    CHECK(defect(k, slack, gp).value == doctest::Approx(0.3).epsilon(1e-12));

  // tiny negative defect clamps with a flag; a genuine violation throws
  Trajectory tight = exact;
  tight.E0 -= 1e-13;
  const auto d = defect(0, tight, gp);
  CHECK(d.value == 0.0);
  CHECK(d.clamped);
  tight.E0 -= 1.0;
  CHECK_THROWS_AS(defect(0, tight, gp), std::runtime_error);
}

TEST_CASE("young barycenter") {
  const GasParams gp;
  const Grid1D g(4, 0.0, 1.0);

  SUBCASE("single atom per cell reproduces the atom") {
    YoungState y;
    y.grid = g;
    y.atoms.resize(4);
    y.conc_trace.assign(4, 0.0);
    for (int i = 0; i < 4; ++i) y.atoms[i] = {{1.0, StatePoint(1.0 + i, 0.5 * i, 0.1 * i)}};
    const auto bar = young_barycenter(y);
    CHECK_FALSE(bar.degenerate);
    for (int i = 0; i < 4; ++i) {
      CHECK(bar.state.rho[i] == 1.0 + i);
      CHECK(bar.state.m[i] == 0.5 * i);
      CHECK(bar.state.S[i] == 0.1 * i);
    }
  }

  SUBCASE("symmetric pair averages to rest") {
    YoungState y;
    y.grid = g;
    y.atoms.resize(4);
    y.conc_trace.assign(4, 0.0);
    for (int i = 0; i < 4; ++i)
      y.atoms[i] = {{0.5, StatePoint(1.0, 1.0, 0.0)}, {0.5, StatePoint(1.0, -1.0, 0.0)}};
    const auto bar = young_barycenter(y);
    CHECK(bar.state.rho[0] == 1.0);
    CHECK(bar.state.m[0] == 0.0);
    CHECK(bar.state.S[0] == 0.0);

    // two-point kinetic gap: <E> - E(bar) = 0.5
    const auto gap = jensen_gap(y, gp);
    for (double v : gap) CHECK(v == doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("random measures match a brute-force oracle") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
      const YoungState y = random_young(rng, g);
      const auto bar = young_barycenter(y);
      for (int i = 0; i < 4; ++i) {
        double r = 0.0, m = 0.0, s = 0.0;
        for (const auto& a : y.atoms[i]) {
          r += a.w * a.state.rho;
          m += a.w * a.state.m[0];
          s += a.w * a.state.S;
        }
        CHECK(bar.state.rho[i] == doctest::Approx(r).epsilon(1e-14));
        CHECK(bar.state.m[i] == doctest::Approx(m).epsilon(1e-14));
        CHECK(bar.state.S[i] == doctest::Approx(s).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("jensen gap is nonnegative") {
  const GasParams gp;
  const Grid1D g(8, 0.0, 1.0);
  std::mt19937_64 rng(29);
  for (int it = 0; it < 1500; ++it) {
    const YoungState y = random_young(rng, g, 4, false, true);
    for (double v : jensen_gap(y, gp)) CHECK(v >= -1e-12);
  }
}

TEST_CASE("measure energy with concentration trace") {
  const GasParams gp;
  const Grid1D g(10, 0.0, 1.0);

  SUBCASE("single atoms without concentration reduce to the barycenter energy") {
    YoungState y;
    y.grid = g;
    y.atoms.resize(10);
    y.conc_trace.assign(10, 0.0);
    for (int i = 0; i < 10; ++i) y.atoms[i] = {{1.0, StatePoint(1.0, 0.2, 0.1)}};
    const auto bar = young_barycenter(y);
    CHECK(dmv_mean_energy(y, gp, 1) == doctest::Approx(mean_energy(bar.state, gp)).epsilon(1e-14));
  }

  SUBCASE("constant trace adds r(d,gamma) times its integral") {
    YoungState y;
    y.grid = g;
    y.atoms.resize(10);
    y.conc_trace.assign(10, 0.3);
    for (int i = 0; i < 10; ++i) y.atoms[i] = {{1.0, StatePoint(1.0, 0.0, 0.0)}};
    CHECK(dmv_mean_energy(y, gp, 1) == doctest::Approx(gp.cv + 0.5 * 0.3).epsilon(1e-14));
  }

  SUBCASE("mixed case matches a brute-force sum") {
    std::mt19937_64 rng(31);
    const YoungState y = random_young(rng, g, 3, true, true);
    double expect = 0.0;
    for (int i = 0; i < 10; ++i) {
      for (const auto& a : y.atoms[i]) expect += a.w * *total_energy(gp, a.state);
      expect += 0.5 * y.conc_trace[i];
    }
    expect *= g.dx;
    CHECK(dmv_mean_energy(y, gp, 1) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("barycentric replacement cannot lower the measured energy") {
  const GasParams gp;
  const Grid1D g(6, 0.0, 1.0);
  std::mt19937_64 rng(37);
  for (int it = 0; it < 300; ++it) {
    const YoungState y = random_young(rng, g, 4, true, false);
    const auto bar = young_barycenter(y);
    REQUIRE_FALSE(bar.degenerate);
    CHECK(mean_energy(bar.state, gp) <= dmv_mean_energy(y, gp, 1) + 1e-12);
  }
}

TEST_CASE("young state validation") {
  const Grid1D g(4, 0.0, 1.0);
  YoungState y;
  y.grid = g;
  y.atoms.resize(4);
  y.conc_trace.assign(4, 0.0);
  for (int i = 0; i < 4; ++i) y.atoms[i] = {{1.0, StatePoint(1.0, 0.0, 0.0)}};
  CHECK(young_validate(y).ok);

  y.atoms[2][0].w = 0.7;
  const auto bad = young_validate(y);
  CHECK_FALSE(bad.ok);
  CHECK(bad.report.find("cell 2") != std::string::npos);

  y.atoms[2][0].w = 1.0;
  y.conc_trace[1] = -0.1;
  CHECK_FALSE(young_validate(y).ok);
  y.conc_trace[1] = 0.0;
  y.atoms[0][0].state.S = -1.0; // below floor 0 at rho = 1
  CHECK_FALSE(young_validate(y, 0.0).ok);
}

TEST_CASE("data space membership") {
  const GasParams gp;
  const Grid1D g(20, 0.0, 1.0);
  DataSpec spec;
  spec.initial = constant_state(g, gp, 1.0, 0.0, 1.0);
  spec.E0 = mean_energy(spec.initial, gp);
  spec.s_floor = -1.0;
  CHECK(in_data_space(spec, gp).ok);

  DataSpec low = spec;
  low.E0 *= 0.9;
  const auto r1 = in_data_space(low, gp);
  CHECK_FALSE(r1.ok);
  CHECK(r1.report.find("exceeds budget") != std::string::npos);

  DataSpec dip = spec;
  dip.s_floor = 0.0;
  dip.initial.S[7] = -0.5;
  const auto r2 = in_data_space(dip, gp);
  CHECK_FALSE(r2.ok);
  CHECK(r2.report.find("cell 7") != std::string::npos);
}

TEST_CASE("trajectory validation catches each invariant") {
  const GasParams gp;
  const Grid1D g(16, 0.0, 1.0);
  const FluidState s = constant_state(g, gp, 1.0, 0.0, 1.0);
  Trajectory traj = constant_trajectory(s, gp, 4, 0.25, 0.1);
  CHECK(validate(traj, gp).ok);

  SUBCASE("mass drift") {
    traj.states[2].rho[0] += 1e-6;
    CHECK_FALSE(validate(traj, gp).ok);
  }
  SUBCASE("entropy drop") {
    traj.states[3].S[0] -= 1e-6;
    CHECK_FALSE(validate(traj, gp).ok);
  }
  SUBCASE("energy above budget") {
    traj.E0 = mean_energy(s, gp) - 1e-6;
    CHECK_FALSE(validate(traj, gp).ok);
  }
  SUBCASE("throwing wrapper names the violation") {
    traj.states[3].S[0] -= 1e-6;
    CHECK_THROWS_WITH_AS(validate_or_throw(traj, gp), doctest::Contains("entropy"),
                         std::runtime_error);
  }
}

TEST_CASE("state-wise convex combination keeps the budget") {
  const GasParams gp;
  const Grid1D g(12, 0.0, 1.0);
  const Trajectory a = constant_trajectory(constant_state(g, gp, 1.0, 0.0, 1.0), gp, 3, 0.1, 0.2);
  Trajectory b = constant_trajectory(constant_state(g, gp, 1.0, 0.0, 1.08), gp, 3, 0.1, 0.0);
  b.E0 = a.E0;
  const Trajectory c = convex_combine(a, b, 0.25);
  CHECK(c.E0 == a.E0);
  CHECK(total_mass(c.states[0]) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(validate(c, gp).ok);
  CHECK_THROWS_AS(convex_combine(a, b, 1.5), std::invalid_argument);
}

TEST_CASE("single-atom view matches the trajectory") {
  const GasParams gp;
  const Grid1D g(8, 0.0, 1.0);
  const Trajectory traj = constant_trajectory(sod_state(g, gp), gp, 3, 0.1, 0.0);
  const YoungSequence seq = young_view(traj);
  REQUIRE(seq.states.size() == traj.states.size());
  for (size_t k = 0; k < seq.states.size(); ++k) {
    const auto bar = young_barycenter(seq.states[k]);
    for (int i = 0; i < g.n_cells; ++i) {
      CHECK(bar.state.rho[i] == traj.states[k].rho[i]);
      CHECK(bar.state.m[i] == traj.states[k].m[i]);
      CHECK(bar.state.S[i] == traj.states[k].S[i]);
    }
  }
}

#include "eulersel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace eulersel {

const char* flux_name(FluxType f) {
  switch (f) {
    case FluxType::rusanov: return "rusanov";
    case FluxType::lax_friedrichs: return "lax_friedrichs";
    case FluxType::hll: return "hll";
  }
  return "?";
}

FluxType flux_from_name(const std::string& name) {
  if (name == "rusanov") return FluxType::rusanov;
  if (name == "lax_friedrichs") return FluxType::lax_friedrichs;
  if (name == "hll") return FluxType::hll;
  throw std::invalid_argument("unknown flux type: " + name);
}

std::string SolverConfig::label() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s eps=%g", flux_name(flux), art_visc);
  return buf;
}

void check_solver_config(const SolverConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 0.95))
    throw std::invalid_argument("SolverConfig: cfl must lie in (0, 0.95]");
  if (!(cfg.art_visc >= 0.0))
    throw std::invalid_argument("SolverConfig: artificial viscosity must be nonnegative");
  if (!(cfg.t_end > 0.0) || !(cfg.out_dt > 0.0))
    throw std::invalid_argument("SolverConfig: t_end and out_dt must be positive");
  const double ratio = cfg.t_end / cfg.out_dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw std::invalid_argument("SolverConfig: out_dt must divide t_end");
}

namespace {

struct Cons {
  int n = 0;
  double dx = 0.0;
  std::vector<double> rho, m, E;
};

struct Primitives {
  std::vector<double> u, p, a; // velocity, pressure, wave speed |u| + c
  double a_max = 0.0;
};

Cons to_cons(const FluidState& s, const GasParams& gp) {
  Cons c;
  c.n = s.n();
  c.dx = s.grid.dx;
  c.rho = s.rho;
  c.m = s.m;
  c.E.resize(c.n);
  for (int i = 0; i < c.n; ++i) {
    if (!(s.rho[i] > 0.0)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "solver: nonpositive density at cell %d", i);
      throw std::runtime_error(buf);
    }
    const double theta = temperature(gp, s.rho[i], s.S[i]);
    c.E[i] = 0.5 * s.m[i] * s.m[i] / s.rho[i] + gp.cv * s.rho[i] * theta;
  }
  return c;
}

FluidState to_state(const Cons& c, const Grid1D& grid, const GasParams& gp, double rho_floor) {
  std::vector<double> S(c.n);
  for (int i = 0; i < c.n; ++i) {
    if (!(c.rho[i] >= rho_floor)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "solver: density floor violated at cell %d (rho=%.6g)", i,
                    c.rho[i]);
      throw std::runtime_error(buf);
    }
    const double e_int = (c.E[i] - 0.5 * c.m[i] * c.m[i] / c.rho[i]) / c.rho[i];
    if (!(e_int > 0.0)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "solver: nonpositive internal energy at cell %d (e=%.6g)",
                    i, e_int);
      throw std::runtime_error(buf);
    }
    S[i] = entropy_of(gp, c.rho[i], e_int / gp.cv);
  }
  return FluidState(grid, c.rho, c.m, std::move(S));
}

// Also performs the per-step sanity checks (positivity, NaN).
Primitives primitives(const Cons& c, const GasParams& gp, double rho_floor) {
  Primitives pr;
  pr.u.resize(c.n);
  pr.p.resize(c.n);
  pr.a.resize(c.n);
  for (int i = 0; i < c.n; ++i) {
    if (!(c.rho[i] >= rho_floor)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "solver: density floor violated at cell %d (rho=%.6g)", i,
                    c.rho[i]);
      throw std::runtime_error(buf);
    }
    const double u = c.m[i] / c.rho[i];
    const double e_int = c.E[i] / c.rho[i] - 0.5 * u * u;
    const double p = (gp.gamma - 1.0) * c.rho[i] * e_int;
    if (!(e_int > 0.0) || std::isnan(p)) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "solver: invalid state at cell %d (e=%.6g)", i, e_int);
      throw std::runtime_error(buf);
    }
    pr.u[i] = u;
    pr.p[i] = p;
    pr.a[i] = std::abs(u) + std::sqrt(gp.gamma * p / c.rho[i]);
    pr.a_max = std::max(pr.a_max, pr.a[i]);
  }
  return pr;
}

inline void phys_flux(double m, double E, double u, double p, double f[3]) {
  f[0] = m;
  f[1] = m * u + p;
  f[2] = (E + p) * u;
}

// Numerical flux at one interface. Ghost values are passed by the caller.
void interface_flux(FluxType type, double a_global, double rhoL, double mL, double EL, double uL,
                    double pL, double aL, double rhoR, double mR, double ER, double uR, double pR,
                    double aR, double f[3]) {
  double fL[3], fR[3];
  phys_flux(mL, EL, uL, pL, fL);
  phys_flux(mR, ER, uR, pR, fR);
  switch (type) {
    case FluxType::rusanov:
    case FluxType::lax_friedrichs: {
      const double a = type == FluxType::rusanov ? std::max(aL, aR) : a_global;
      f[0] = 0.5 * (fL[0] + fR[0]) - 0.5 * a * (rhoR - rhoL);
      f[1] = 0.5 * (fL[1] + fR[1]) - 0.5 * a * (mR - mL);
      f[2] = 0.5 * (fL[2] + fR[2]) - 0.5 * a * (ER - EL);
      return;
    }
    case FluxType::hll: {
      const double cL = aL - std::abs(uL);
      const double cR = aR - std::abs(uR);
      const double SL = std::min(uL - cL, uR - cR);
      const double SR = std::max(uL + cL, uR + cR);
      if (SL >= 0.0) {
        f[0] = fL[0]; f[1] = fL[1]; f[2] = fL[2];
      } else if (SR <= 0.0) {
        f[0] = fR[0]; f[1] = fR[1]; f[2] = fR[2];
      } else {
        const double inv = 1.0 / (SR - SL);
        f[0] = (SR * fL[0] - SL * fR[0] + SL * SR * (rhoR - rhoL)) * inv;
        f[1] = (SR * fL[1] - SL * fR[1] + SL * SR * (mR - mL)) * inv;
        f[2] = (SR * fL[2] - SL * fR[2] + SL * SR * (ER - EL)) * inv;
      }
      return;
    }
  }
}

// One forward-Euler update of the conservative variables with the given dt.
void advance(Cons& c, const Primitives& pr, const SolverConfig& cfg, double dt) {
  const int n = c.n;
  const double dx = c.dx;
  std::vector<double> flux(3 * (n + 1));
  auto at = [&](int iface, int comp) -> double& { return flux[3 * iface + comp]; };

  // Reflective ghosts: mirror rho and E, negate m.
  for (int iface = 0; iface <= n; ++iface) {
    int L = iface - 1, R = iface;
    double rhoL, mL, EL, uL, pL, aL, rhoR, mR, ER, uR, pR, aR;
    if (L < 0) {
      rhoL = c.rho[0]; mL = -c.m[0]; EL = c.E[0];
      uL = -pr.u[0]; pL = pr.p[0]; aL = pr.a[0];
    } else {
      rhoL = c.rho[L]; mL = c.m[L]; EL = c.E[L];
      uL = pr.u[L]; pL = pr.p[L]; aL = pr.a[L];
    }
    if (R >= n) {
      rhoR = c.rho[n - 1]; mR = -c.m[n - 1]; ER = c.E[n - 1];
      uR = -pr.u[n - 1]; pR = pr.p[n - 1]; aR = pr.a[n - 1];
    } else {
      rhoR = c.rho[R]; mR = c.m[R]; ER = c.E[R];
      uR = pr.u[R]; pR = pr.p[R]; aR = pr.a[R];
    }
    double f[3] = {0.0, 0.0, 0.0};
    interface_flux(cfg.flux, pr.a_max, rhoL, mL, EL, uL, pL, aL, rhoR, mR, ER, uR, pR, aR, f);
    at(iface, 0) = f[0];
    at(iface, 1) = f[1];
    at(iface, 2) = f[2];
  }

  const double lam = dt / dx;
  std::vector<double> nrho(n), nm(n), nE(n);
  for (int i = 0; i < n; ++i) {
    nrho[i] = c.rho[i] - lam * (at(i + 1, 0) - at(i, 0));
    nm[i] = c.m[i] - lam * (at(i + 1, 1) - at(i, 1));
    nE[i] = c.E[i] - lam * (at(i + 1, 2) - at(i, 2));
  }
  if (cfg.art_visc > 0.0) {
    const double nu = dt * cfg.art_visc / (dx * dx);
    for (int i = 0; i < n; ++i) {
      const double rL = i > 0 ? c.rho[i - 1] : c.rho[0];
      const double rR = i < n - 1 ? c.rho[i + 1] : c.rho[n - 1];
      const double mL = i > 0 ? c.m[i - 1] : -c.m[0];
      const double mR = i < n - 1 ? c.m[i + 1] : -c.m[n - 1];
      const double EL = i > 0 ? c.E[i - 1] : c.E[0];
      const double ER = i < n - 1 ? c.E[i + 1] : c.E[n - 1];
      nrho[i] += nu * (rL - 2.0 * c.rho[i] + rR);
      nm[i] += nu * (mL - 2.0 * c.m[i] + mR);
      nE[i] += nu * (EL - 2.0 * c.E[i] + ER);
    }
  }
  c.rho = std::move(nrho);
  c.m = std::move(nm);
  c.E = std::move(nE);
}

double cfl_dt(const Cons& c, const Primitives& pr, const SolverConfig& cfg) {
  double dt = cfg.cfl * c.dx / pr.a_max;
  if (cfg.art_visc > 0.0) dt = std::min(dt, cfg.cfl * 0.5 * c.dx * c.dx / cfg.art_visc);
  return dt;
}

// Advance one macro interval of length out_dt, clipping the last CFL step.
void integrate_interval(Cons& c, const SolverConfig& cfg, const GasParams& gp) {
  double local = 0.0;
  const double target = cfg.out_dt;
  while (target - local > 1e-14 * target) {
    const auto pr = primitives(c, gp, cfg.rho_floor);
    double dt = std::min(cfl_dt(c, pr, cfg), target - local);
    advance(c, pr, cfg, dt);
    local += dt;
  }
}

} // namespace

StepResult step(const FluidState& s, const SolverConfig& cfg, const GasParams& gp) {
  check_solver_config(cfg);
  Cons c = to_cons(s, gp);
  const auto pr = primitives(c, gp, cfg.rho_floor);
  const double dt = cfl_dt(c, pr, cfg);
  advance(c, pr, cfg, dt);
  return {to_state(c, s.grid, gp, cfg.rho_floor), dt};
}

Trajectory run(const DataSpec& spec, const SolverConfig& cfg, const GasParams& gp) {
  check_solver_config(cfg);
  const auto check = in_data_space(spec, gp);
  if (!check.ok)
    throw std::invalid_argument("run: initial data outside the data space:\n" + check.report);

  const int n_out = static_cast<int>(std::round(cfg.t_end / cfg.out_dt));
  Trajectory traj;
  traj.E0 = spec.E0;
  traj.M0 = total_mass(spec.initial);
  traj.meta.label = cfg.label();
  traj.meta.viscosity = cfg.art_visc;
  traj.times.resize(n_out + 1);
  for (int k = 0; k <= n_out; ++k) traj.times[k] = k * cfg.out_dt;
  traj.states.reserve(n_out + 1);
  traj.states.push_back(spec.initial);

  Cons c = to_cons(spec.initial, gp);
  for (int k = 1; k <= n_out; ++k) {
    integrate_interval(c, cfg, gp);
    traj.states.push_back(to_state(c, spec.initial.grid, gp, cfg.rho_floor));
  }
  validate_or_throw(traj, gp);
  return traj;
}

} // namespace eulersel

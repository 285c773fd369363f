#include "eulersel/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace eulersel {

namespace {

std::string cell_msg(const char* what, int i, double v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s at cell %d (value %.6g)", what, i, v);
  return buf;
}

} // namespace

bool same_grid(const Grid1D& a, const Grid1D& b) {
  return a.n_cells == b.n_cells && a.x_min == b.x_min && a.x_max == b.x_max;
}

FluidState::FluidState(const Grid1D& g, std::vector<double> rho_, std::vector<double> m_,
                       std::vector<double> S_)
    : grid(g), rho(std::move(rho_)), m(std::move(m_)), S(std::move(S_)) {
  const auto n = static_cast<size_t>(g.n_cells);
  if (rho.size() != n || m.size() != n || S.size() != n)
    throw std::invalid_argument("FluidState: field size does not match grid");
}

double Trajectory::out_dt() const {
  if (times.size() < 2) throw std::logic_error("Trajectory: fewer than two samples");
  return times[1] - times[0];
}

int Trajectory::index_of_time(double t) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  for (size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - t) <= tol) return static_cast<int>(k);
  throw std::invalid_argument("Trajectory: requested instant is not a sample time");
}

bool same_times(const Trajectory& a, const Trajectory& b, double tol) {
  if (a.times.size() != b.times.size()) return false;
  for (size_t k = 0; k < a.times.size(); ++k)
    if (std::abs(a.times[k] - b.times[k]) > tol * std::max(1.0, std::abs(a.times[k])))
      return false;
  return true;
}

double total_mass(const FluidState& s) {
  double sum = 0.0;
  for (double r : s.rho) sum += r;
  return s.grid.dx * sum;
}

double total_entropy(const FluidState& s) {
  double sum = 0.0;
  for (double v : s.S) sum += v;
  return s.grid.dx * sum;
}

double mean_energy(const FluidState& s, const GasParams& gp) {
  double sum = 0.0;
  for (int i = 0; i < s.n(); ++i) {
    const auto E = total_energy(gp, s.cell(i));
    if (!E) throw std::domain_error(cell_msg("mean_energy: state outside energy domain", i, s.rho[i]));
    sum += *E;
  }
  return s.grid.dx * sum;
}

DefectValue defect(int t_index, const Trajectory& traj, const GasParams& gp, double tol) {
  if (t_index < 0 || t_index >= traj.n_samples())
    throw std::out_of_range("defect: sample index out of range");
  const double d = traj.E0 - mean_energy(traj.states[t_index], gp);
  if (d >= 0.0) return {d, false};
  if (d >= -tol) return {0.0, true};
  throw std::runtime_error("defect: mean energy exceeds the budget beyond tolerance");
}

BarycenterResult young_barycenter(const YoungState& y) {
  BarycenterResult out;
  std::vector<double> rho(y.n()), m(y.n()), S(y.n());
  for (int i = 0; i < y.n(); ++i) {
    double r = 0.0, s = 0.0;
    std::array<double, 3> mm{0.0, 0.0, 0.0};
    for (const auto& a : y.atoms[i]) {
      r += a.w * a.state.rho;
      s += a.w * a.state.S;
      for (int c = 0; c < 3; ++c) mm[c] += a.w * a.state.m[c];
    }
    rho[i] = r;
    m[i] = mm[0];
    S[i] = s;
    if (r <= 0.0 && !out.degenerate) {
      out.degenerate = true;
      out.note = cell_msg("vacuum barycenter", i, r);
    }
    if ((std::abs(mm[1]) > 1e-14 || std::abs(mm[2]) > 1e-14) && !out.degenerate) {
      out.degenerate = true;
      out.note = cell_msg("transverse momentum in barycenter", i, mm[1]);
    }
  }
  out.state = FluidState(y.grid, std::move(rho), std::move(m), std::move(S));
  return out;
}

std::vector<double> jensen_gap(const YoungState& y, const GasParams& gp) {
  std::vector<double> gap(y.n());
  for (int i = 0; i < y.n(); ++i) {
    double mean_E = 0.0, r = 0.0, s = 0.0;
    std::array<double, 3> mm{0.0, 0.0, 0.0};
    for (const auto& a : y.atoms[i]) {
      const auto E = total_energy(gp, a.state);
      if (!E) throw std::domain_error(cell_msg("jensen_gap: atom outside energy domain", i, a.state.rho));
      mean_E += a.w * *E;
      r += a.w * a.state.rho;
      s += a.w * a.state.S;
      for (int c = 0; c < 3; ++c) mm[c] += a.w * a.state.m[c];
    }
    const auto E_bar = total_energy(gp, StatePoint(r, mm, s));
    if (!E_bar)
      throw std::domain_error(cell_msg("jensen_gap: barycenter outside energy domain", i, r));
    gap[i] = mean_E - *E_bar;
  }
  return gap;
}

double dmv_mean_energy(const YoungState& y, const GasParams& gp, int d) {
  const double r = r_coeff(d, gp);
  double sum = 0.0;
  for (int i = 0; i < y.n(); ++i) {
    double mean_E = 0.0;
    for (const auto& a : y.atoms[i]) {
      const auto E = total_energy(gp, a.state);
      if (!E)
        throw std::domain_error(cell_msg("dmv_mean_energy: atom outside energy domain", i, a.state.rho));
      mean_E += a.w * *E;
    }
    sum += mean_E + r * y.conc_trace[i];
  }
  return y.grid.dx * sum;
}

YoungCheck young_validate(const YoungState& y, double s_floor, double tol) {
  YoungCheck out;
  std::ostringstream rep;
  for (int i = 0; i < y.n(); ++i) {
    double wsum = 0.0;
    for (const auto& a : y.atoms[i]) {
      wsum += a.w;
      if (a.w < 0.0) {
        out.ok = false;
        rep << cell_msg("negative atom weight", i, a.w) << "\n";
      }
      if (a.state.rho < 0.0) {
        out.ok = false;
        rep << cell_msg("negative atom density", i, a.state.rho) << "\n";
      }
      if (a.state.S < s_floor * a.state.rho - tol) {
        out.ok = false;
        rep << cell_msg("atom entropy below floor", i, a.state.S) << "\n";
      }
    }
    if (std::abs(wsum - 1.0) > tol) {
      out.ok = false;
      rep << cell_msg("atom weights do not sum to 1", i, wsum) << "\n";
    }
    if (y.conc_trace[i] < 0.0) {
      out.ok = false;
      rep << cell_msg("negative concentration trace", i, y.conc_trace[i]) << "\n";
    }
  }
  out.report = rep.str();
  return out;
}

DataCheck in_data_space(const DataSpec& spec, const GasParams& gp, double tol) {
  DataCheck out;
  std::ostringstream rep;
  double E0_init = 0.0;
  try {
    E0_init = mean_energy(spec.initial, gp);
  } catch (const std::exception& e) {
    out.ok = false;
    rep << e.what() << "\n";
    out.report = rep.str();
    return out;
  }
  if (E0_init > spec.E0 + tol) {
    out.ok = false;
    rep << "initial energy " << E0_init << " exceeds budget E0 = " << spec.E0 << "\n";
  }
  for (int i = 0; i < spec.initial.n(); ++i) {
    if (spec.initial.S[i] < spec.s_floor * spec.initial.rho[i] - tol) {
      out.ok = false;
      rep << cell_msg("initial entropy below floor", i, spec.initial.S[i]) << "\n";
      break;
    }
  }
  out.report = rep.str();
  return out;
}

ValidationReport validate(const Trajectory& traj, const GasParams& gp, double mass_rtol,
                          double entropy_tol, double energy_tol) {
  ValidationReport out;
  auto fail = [&out](const std::string& msg) {
    out.ok = false;
    out.violations.push_back(msg);
  };
  if (traj.times.empty() || traj.states.empty()) {
    fail("empty trajectory");
    return out;
  }
  if (traj.times[0] != 0.0) fail("first sample instant is not t = 0");
  for (size_t k = 1; k < traj.times.size(); ++k)
    if (!(traj.times[k] > traj.times[k - 1])) {
      fail("sample instants not strictly increasing");
      break;
    }
  double prev_entropy = 0.0;
  char buf[160];
  for (int k = 0; k < traj.n_samples(); ++k) {
    const FluidState& s = traj.states[k];
    const double mass = total_mass(s);
    if (std::abs(mass - traj.M0) > mass_rtol * std::max(1.0, std::abs(traj.M0))) {
      std::snprintf(buf, sizeof(buf), "mass %.17g at t=%g deviates from M0=%.17g", mass,
                    traj.times[k], traj.M0);
      fail(buf);
    }
    double energy = 0.0;
    try {
      energy = mean_energy(s, gp);
    } catch (const std::exception& e) {
      std::snprintf(buf, sizeof(buf), "t=%g: %s", traj.times[k], e.what());
      fail(buf);
      continue;
    }
    if (energy > traj.E0 + energy_tol) {
      std::snprintf(buf, sizeof(buf), "mean energy %.17g at t=%g exceeds E0=%.17g", energy,
                    traj.times[k], traj.E0);
      fail(buf);
    }
    const double entropy = total_entropy(s);
    if (k > 0 && entropy < prev_entropy - entropy_tol) {
      std::snprintf(buf, sizeof(buf), "total entropy decreases at t=%g (%.17g -> %.17g)",
                    traj.times[k], prev_entropy, entropy);
      fail(buf);
    }
    prev_entropy = entropy;
  }
  return out;
}

void validate_or_throw(const Trajectory& traj, const GasParams& gp) {
  const auto rep = validate(traj, gp);
  if (!rep.ok) {
    std::string msg = "trajectory invariant violation:";
    for (const auto& v : rep.violations) (msg += "\n  ") += v;
    throw std::runtime_error(msg);
  }
}

Trajectory convex_combine(const Trajectory& a, const Trajectory& b, double lambda) {
  if (!same_times(a, b) || !same_grid(a.states[0].grid, b.states[0].grid))
    throw std::invalid_argument("convex_combine: candidates must share grid and times");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("convex_combine: lambda outside [0,1]");
  Trajectory out;
  out.times = a.times;
  out.E0 = a.E0;
  out.M0 = a.M0;
  out.meta.label = "combine(" + a.meta.label + "," + b.meta.label + ")";
  out.meta.viscosity = std::max(a.meta.viscosity, b.meta.viscosity);
  out.states.reserve(a.states.size());
  const double mu = 1.0 - lambda;
  for (size_t k = 0; k < a.states.size(); ++k) {
    const FluidState& sa = a.states[k];
    const FluidState& sb = b.states[k];
    std::vector<double> rho(sa.n()), m(sa.n()), S(sa.n());
    for (int i = 0; i < sa.n(); ++i) {
      rho[i] = lambda * sa.rho[i] + mu * sb.rho[i];
      m[i] = lambda * sa.m[i] + mu * sb.m[i];
      S[i] = lambda * sa.S[i] + mu * sb.S[i];
    }
    out.states.emplace_back(sa.grid, std::move(rho), std::move(m), std::move(S));
  }
  return out;
}

YoungSequence young_view(const Trajectory& traj) {
  YoungSequence seq;
  seq.times = traj.times;
  seq.states.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    YoungState y;
    y.grid = s.grid;
    y.atoms.resize(s.n());
    y.conc_trace.assign(s.n(), 0.0);
    for (int i = 0; i < s.n(); ++i) y.atoms[i] = {YoungAtom{1.0, s.cell(i)}};
    seq.states.push_back(std::move(y));
  }
  return seq;
}

} // namespace eulersel

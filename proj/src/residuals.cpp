#include "eulersel/residuals.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

namespace eulersel {

namespace {

double poly_time(int mode, double tau) {
  const double om = 1.0 - tau;
  switch (mode) {
    case 0: return om * om;
    case 1: return tau * om * om;
    case 2: return tau * tau * om * om;
    default: return om * om * om;
  }
}

double poly_time_deriv(int mode, double tau) {
  const double om = 1.0 - tau;
  switch (mode) {
    case 0: return -2.0 * om;
    case 1: return om * om - 2.0 * tau * om;
    case 2: return 2.0 * tau * om * om - 2.0 * tau * tau * om;
    default: return -3.0 * om * om;
  }
}

double poly_space(int mode, double xi) {
  switch (mode) {
    case 0: return 1.0;
    case 1: return xi;
    case 2: return xi * (1.0 - xi);
    default: return xi * xi * (1.0 - xi);
  }
}

double poly_space_deriv(int mode, double xi) {
  switch (mode) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 1.0 - 2.0 * xi;
    default: return 2.0 * xi - 3.0 * xi * xi;
  }
}

double bump_fn(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double bump_fn_deriv(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double d = 1.0 - r * r;
  return bump_fn(r) * (-2.0 * r / (d * d));
}

} // namespace

TestFunction TestFunction::polynomial(int time_mode, int space_mode, double t_end, double x_min,
                                      double x_max) {
  if (time_mode < 0 || time_mode > 3 || space_mode < 0 || space_mode > 3)
    throw std::invalid_argument("TestFunction: polynomial mode out of range");
  TestFunction f;
  f.kind_ = TestFunctionKind::space_time_polynomial;
  f.time_mode_ = time_mode;
  f.space_mode_ = space_mode;
  f.t_end_ = t_end;
  f.x_min_ = x_min;
  f.x_max_ = x_max;
  f.wall_zero_ = space_mode >= 2;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "poly t%d x%d", time_mode, space_mode);
  f.id_ = buf;
  return f;
}

TestFunction TestFunction::bump(double t0, double t1, double xa, double xb) {
  if (!(t1 > t0) || !(xb > xa)) throw std::invalid_argument("TestFunction: empty bump support");
  TestFunction f;
  f.kind_ = TestFunctionKind::compact_bump;
  f.t0_ = t0;
  f.t1_ = t1;
  f.xa_ = xa;
  f.xb_ = xb;
  f.wall_zero_ = true;
  char buf[80];
  std::snprintf(buf, sizeof(buf), "bump t[%g,%g] x[%g,%g]", t0, t1, xa, xb);
  f.id_ = buf;
  return f;
}

double TestFunction::time_value(double t) const {
  if (kind_ == TestFunctionKind::space_time_polynomial) {
    const double tau = t / t_end_;
    if (tau < 0.0 || tau > 1.0) return 0.0;
    return poly_time(time_mode_, tau);
  }
  return bump_fn((2.0 * t - (t0_ + t1_)) / (t1_ - t0_));
}

double TestFunction::time_deriv(double t) const {
  if (kind_ == TestFunctionKind::space_time_polynomial) {
    const double tau = t / t_end_;
    if (tau < 0.0 || tau > 1.0) return 0.0;
    return poly_time_deriv(time_mode_, tau) / t_end_;
  }
  return bump_fn_deriv((2.0 * t - (t0_ + t1_)) / (t1_ - t0_)) * 2.0 / (t1_ - t0_);
}

double TestFunction::space_value(double x) const {
  if (kind_ == TestFunctionKind::space_time_polynomial) {
    const double xi = (x - x_min_) / (x_max_ - x_min_);
    return poly_space(space_mode_, xi);
  }
  return bump_fn((2.0 * x - (xa_ + xb_)) / (xb_ - xa_));
}

double TestFunction::space_deriv(double x) const {
  if (kind_ == TestFunctionKind::space_time_polynomial) {
    const double L = x_max_ - x_min_;
    return poly_space_deriv(space_mode_, (x - x_min_) / L) / L;
  }
  return bump_fn_deriv((2.0 * x - (xa_ + xb_)) / (xb_ - xa_)) * 2.0 / (xb_ - xa_);
}

std::vector<TestFunction> default_basis(double t_end, double x_min, double x_max) {
  std::vector<TestFunction> basis;
  basis.reserve(24);
  for (int tm = 0; tm < 4; ++tm)
    for (int xm = 0; xm < 4; ++xm) basis.push_back(TestFunction::polynomial(tm, xm, t_end, x_min, x_max));
  const double L = x_max - x_min;
  const double t_ivs[4][2] = {{0.0, 0.5 * t_end}, {0.2 * t_end, 0.8 * t_end},
                              {0.4 * t_end, t_end}, {0.0, t_end}};
  const double x_ivs[2][2] = {{x_min + 0.1 * L, x_min + 0.5 * L},
                              {x_min + 0.5 * L, x_min + 0.9 * L}};
  for (const auto& ti : t_ivs)
    for (const auto& xi : x_ivs) basis.push_back(TestFunction::bump(ti[0], ti[1], xi[0], xi[1]));
  return basis;
}

namespace {

enum class Condition { continuity, momentum, entropy };

// A is paired with d/dt of the test function, B with its space derivative.
void fill_atomic(const FluidState& s, Condition cond, const GasParams* gp, std::vector<double>& A,
                 std::vector<double>& B) {
  const int n = s.n();
  A.resize(n);
  B.resize(n);
  for (int i = 0; i < n; ++i) {
    switch (cond) {
      case Condition::continuity:
        A[i] = s.rho[i];
        B[i] = s.m[i];
        break;
      case Condition::momentum: {
        A[i] = s.m[i];
        if (s.rho[i] > 0.0) {
          const auto p = pressure(*gp, s.rho[i], s.S[i]);
          B[i] = s.m[i] * s.m[i] / s.rho[i] + *p;
        } else {
          B[i] = 0.0;
        }
        break;
      }
      case Condition::entropy:
        A[i] = s.S[i];
        B[i] = s.rho[i] > 0.0 ? s.S[i] * s.m[i] / s.rho[i] : 0.0;
        break;
    }
  }
}

void fill_young(const YoungState& y, Condition cond, const GasParams* gp, std::vector<double>& A,
                std::vector<double>& B) {
  const int n = y.n();
  A.assign(n, 0.0);
  B.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (const auto& a : y.atoms[i]) {
      const StatePoint& st = a.state;
      switch (cond) {
        case Condition::continuity:
          A[i] += a.w * st.rho;
          B[i] += a.w * st.m[0];
          break;
        case Condition::momentum:
          A[i] += a.w * st.m[0];
          if (st.rho > 0.0) {
            const auto p = pressure(*gp, st.rho, st.S);
            B[i] += a.w * (st.m[0] * st.m[0] / st.rho + *p);
          }
          break;
        case Condition::entropy:
          A[i] += a.w * st.S;
          if (st.rho > 0.0) B[i] += a.w * st.S * st.m[0] / st.rho;
          break;
      }
    }
  }
}

struct ResidualResult {
  double residual = 0.0;
  double conc_bound = 0.0;
};

// Core quadrature: exact telescoping of T(t) against the field paired with
// d/dt, trapezoid in time for the advective term, cell midpoints in space.
template <typename FillFn, typename ConcFn>
ResidualResult weak_residual(const std::vector<double>& times, const Grid1D& grid, FillFn fill,
                             ConcFn conc_total, const TestFunction& phi) {
  const int K = static_cast<int>(times.size()) - 1;
  if (K < 1) throw std::invalid_argument("residual: need at least two sample instants");
  const int n = grid.n_cells;

  std::vector<double> Xv(n), Xd(n);
  for (int i = 0; i < n; ++i) {
    Xv[i] = phi.space_value(grid.x_center(i));
    Xd[i] = phi.space_deriv(grid.x_center(i));
  }
  double Xd_max = 0.0;
  for (int i = 0; i < n; ++i) Xd_max = std::max(Xd_max, std::abs(Xd[i]));

  std::vector<double> Tv(K + 1), w(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) Tv[k] = phi.time_value(times[k]);
  for (int k = 0; k <= K; ++k) {
    const double left = k > 0 ? 0.5 * (times[k] - times[k - 1]) : 0.0;
    const double right = k < K ? 0.5 * (times[k + 1] - times[k]) : 0.0;
    w[k] = left + right;
  }

  std::vector<double> A, B, A0;
  double time_part = 0.0;   // sum_i dx * X_i * sum_k A_i^k (T^{k+1} - T^k)
  double space_part = 0.0;  // sum_k w_k T^k * sum_i dx * X'_i * B_i^k
  double bound = 0.0;
  std::vector<double> acc_time(n, 0.0);
  for (int k = 0; k <= K; ++k) {
    fill(k, A, B);
    if (k == 0) A0 = A;
    if (k < K) {
      const double dT = Tv[k + 1] - Tv[k];
      for (int i = 0; i < n; ++i) acc_time[i] += A[i] * dT;
    }
    double row = 0.0;
    for (int i = 0; i < n; ++i) row += Xd[i] * B[i];
    space_part += w[k] * Tv[k] * row * grid.dx;
    bound += w[k] * std::abs(Tv[k]) * Xd_max * conc_total(k);
  }
  for (int i = 0; i < n; ++i) time_part += Xv[i] * acc_time[i];
  time_part *= grid.dx;

  double initial = 0.0;
  for (int i = 0; i < n; ++i) initial += A0[i] * Xv[i];
  initial *= grid.dx * Tv[0];

  return {time_part + space_part + initial, bound};
}

ResidualResult traj_residual(const Trajectory& traj, const TestFunction& phi, Condition cond,
                             const GasParams* gp) {
  auto fill = [&](int k, std::vector<double>& A, std::vector<double>& B) {
    fill_atomic(traj.states[k], cond, gp, A, B);
  };
  auto conc = [](int) { return 0.0; };
  return weak_residual(traj.times, traj.states[0].grid, fill, conc, phi);
}

ResidualResult seq_residual(const YoungSequence& seq, const TestFunction& phi, Condition cond,
                            const GasParams* gp) {
  auto fill = [&](int k, std::vector<double>& A, std::vector<double>& B) {
    fill_young(seq.states[k], cond, gp, A, B);
  };
  const Grid1D& grid = seq.states[0].grid;
  auto conc = [&](int k) {
    double c = 0.0;
    for (double v : seq.states[k].conc_trace) c += v;
    return c * grid.dx;
  };
  return weak_residual(seq.times, grid, fill, conc, phi);
}

} // namespace

double continuity_residual(const Trajectory& traj, const TestFunction& phi) {
  return traj_residual(traj, phi, Condition::continuity, nullptr).residual;
}

double continuity_residual(const YoungSequence& seq, const TestFunction& phi) {
  return seq_residual(seq, phi, Condition::continuity, nullptr).residual;
}

MomentumResidual momentum_residual(const Trajectory& traj, const TestFunction& phi,
                                   const GasParams& gp) {
  if (!phi.wall_zero())
    throw std::invalid_argument("momentum_residual: test function must vanish at the walls");
  const auto r = traj_residual(traj, phi, Condition::momentum, &gp);
  return {r.residual, r.conc_bound};
}

MomentumResidual momentum_residual(const YoungSequence& seq, const TestFunction& phi,
                                   const GasParams& gp) {
  if (!phi.wall_zero())
    throw std::invalid_argument("momentum_residual: test function must vanish at the walls");
  const auto r = seq_residual(seq, phi, Condition::momentum, &gp);
  return {r.residual, r.conc_bound};
}

double entropy_residual(const Trajectory& traj, const TestFunction& phi) {
  if (!phi.nonneg())
    throw std::invalid_argument("entropy_residual: test function must be nonnegative");
  return traj_residual(traj, phi, Condition::entropy, nullptr).residual;
}

double entropy_residual(const YoungSequence& seq, const TestFunction& phi) {
  if (!phi.nonneg())
    throw std::invalid_argument("entropy_residual: test function must be nonnegative");
  return seq_residual(seq, phi, Condition::entropy, nullptr).residual;
}

EnergyCompatReport energy_compat_check(const Trajectory& traj, double E0, const GasParams& gp,
                                       int d, double tol) {
  (void)d;
  EnergyCompatReport rep;
  rep.data_energy = mean_energy(traj.states[0], gp);
  rep.dmv_energy.resize(traj.states.size());
  for (size_t k = 0; k < traj.states.size(); ++k) {
    rep.dmv_energy[k] = mean_energy(traj.states[k], gp);
    if (rep.dmv_energy[k] > E0 + tol) {
      rep.pass = false;
      rep.failing.push_back(static_cast<int>(k));
    }
  }
  if (rep.data_energy > E0 + tol) rep.pass = false;
  return rep;
}

EnergyCompatReport energy_compat_check(const YoungSequence& seq, double E0, const GasParams& gp,
                                       int d, double tol) {
  EnergyCompatReport rep;
  rep.dmv_energy.resize(seq.states.size());
  for (size_t k = 0; k < seq.states.size(); ++k) {
    rep.dmv_energy[k] = dmv_mean_energy(seq.states[k], gp, d);
    if (rep.dmv_energy[k] > E0 + tol) {
      rep.pass = false;
      rep.failing.push_back(static_cast<int>(k));
    }
  }
  rep.data_energy = rep.dmv_energy.empty() ? 0.0 : rep.dmv_energy[0];
  return rep;
}

} // namespace eulersel

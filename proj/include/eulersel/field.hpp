#pragma once

// Spatial discretization: cell-averaged states on a 1D grid, trajectories
// with an energy budget, atomic Young measures with a concentration trace,
// and the admissible-data membership test.

#include <string>
#include <vector>

#include "eulersel/thermo.hpp"

namespace eulersel {

struct Grid1D {
  int n_cells = 0;
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 0.0;

  Grid1D() = default;
  Grid1D(int n, double a, double b) : n_cells(n), x_min(a), x_max(b), dx((b - a) / n) {
    if (n < 4) throw std::invalid_argument("Grid1D: need at least 4 cells");
    if (!(b > a)) throw std::invalid_argument("Grid1D: empty domain");
  }

  double x_center(int i) const { return x_min + (i + 0.5) * dx; }
  double length() const { return x_max - x_min; }
};

bool same_grid(const Grid1D& a, const Grid1D& b);

// Cell-averaged (rho, m, S) snapshot; m is the x-momentum.
struct FluidState {
  Grid1D grid;
  std::vector<double> rho;
  std::vector<double> m;
  std::vector<double> S;

  FluidState() = default;
  FluidState(const Grid1D& g, std::vector<double> rho_, std::vector<double> m_,
             std::vector<double> S_);

  int n() const { return grid.n_cells; }
  StatePoint cell(int i) const { return StatePoint(rho[i], m[i], S[i]); }
};

struct Provenance {
  std::string label;               // e.g. "rusanov eps=0.01"
  double viscosity = 0.0;          // artificial viscosity the run used
  std::vector<std::string> events; // lifts, concatenations
};

// One candidate: states sampled at uniform macro instants, plus the total
// energy budget E0 and total mass M0 it must respect.
struct Trajectory {
  std::vector<double> times; // t0 = 0, strictly increasing
  std::vector<FluidState> states;
  double E0 = 0.0;
  double M0 = 0.0;
  Provenance meta;

  int n_samples() const { return static_cast<int>(times.size()); }
  double out_dt() const;
  int index_of_time(double t) const; // throws if t is not a sample instant
};

bool same_times(const Trajectory& a, const Trajectory& b, double tol = 1e-12);

struct YoungAtom {
  double w = 1.0;
  StatePoint state;
};

// Atomic Young measure per cell plus the per-cell trace density of the
// concentration measure.
struct YoungState {
  Grid1D grid;
  std::vector<std::vector<YoungAtom>> atoms;
  std::vector<double> conc_trace;

  int n() const { return grid.n_cells; }
};

// Time-indexed Young states; the measure-valued counterpart of Trajectory.
struct YoungSequence {
  std::vector<double> times;
  std::vector<YoungState> states;
};

// Initial data plus energy budget and entropy floor.
struct DataSpec {
  FluidState initial;
  double E0 = 0.0;
  double s_floor = 0.0; // lower bound on specific entropy: S >= s_floor * rho
};

// Finite family of candidates sharing initial data and budget.
struct CandidateSet {
  DataSpec spec;
  std::vector<Trajectory> candidates;
  std::vector<std::string> labels;
  std::vector<std::string> failures; // runs that aborted, with reasons

  int size() const { return static_cast<int>(candidates.size()); }
};

double total_mass(const FluidState& s);
double total_entropy(const FluidState& s);

// dx * sum of cell total energies; throws naming the first out-of-domain cell.
double mean_energy(const FluidState& s, const GasParams& gp);

struct DefectValue {
  double value = 0.0; // clamped to 0 when negative within tolerance
  bool clamped = false;
};

// E0 minus the mean energy at sample t_index. Negative round-off values are
// clamped to zero and flagged; a genuine budget violation throws.
DefectValue defect(int t_index, const Trajectory& traj, const GasParams& gp,
                   double tol = 1e-10);

struct BarycenterResult {
  FluidState state;
  bool degenerate = false; // vacuum barycenter or transverse momentum left over
  std::string note;
};

BarycenterResult young_barycenter(const YoungState& y);

// Per-cell <V;E> - E(<V>) >= 0 by convexity of the total energy.
std::vector<double> jensen_gap(const YoungState& y, const GasParams& gp);

// dx * sum over cells of [<V;E> + r(d,gamma) * conc_trace].
double dmv_mean_energy(const YoungState& y, const GasParams& gp, int d);

// Validity of a Young state: weights normalized, atoms on the admissible
// support, nonnegative concentration trace.
struct YoungCheck {
  bool ok = true;
  std::string report;
};
YoungCheck young_validate(const YoungState& y, double s_floor = 0.0, double tol = 1e-12);

struct DataCheck {
  bool ok = true;
  std::string report;
};

// Membership test: integral energy within budget and entropy floor cell-wise.
DataCheck in_data_space(const DataSpec& spec, const GasParams& gp, double tol = 1e-10);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Trajectory invariants: mass conserved (relative 1e-10), total entropy
// non-decreasing (1e-10 per step), mean energy within budget (1e-10).
ValidationReport validate(const Trajectory& traj, const GasParams& gp,
                          double mass_rtol = 1e-10, double entropy_tol = 1e-10,
                          double energy_tol = 1e-10);
void validate_or_throw(const Trajectory& traj, const GasParams& gp);

// State-wise convex combination of two candidates over a shared grid and
// sample times; inherits E0, M0.
Trajectory convex_combine(const Trajectory& a, const Trajectory& b, double lambda);

// Single-atom view of a trajectory with zero concentration trace.
YoungSequence young_view(const Trajectory& traj);

} // namespace eulersel

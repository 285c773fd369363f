#pragma once

// Trajectory persistence (meta.json plus one CSV per instant), diagnostics
// CSV emission, and small CSV helpers. Numbers are written with enough
// digits to round-trip exactly.

#include <filesystem>

#include "eulersel/field.hpp"

namespace eulersel {

// Directory layout: meta.json + state_00000.csv ... per instant, each CSV
// with schema t,cell_index,x_center,rho,m,S.
void save_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                     const GasParams& gp);

struct LoadedTrajectory {
  Trajectory traj;
  double gamma = 1.4;
};

LoadedTrajectory load_trajectory(const std::filesystem::path& dir);

// Per-instant series: t,total_mass,total_entropy,mean_energy,defect.
void write_diagnostics_csv(const std::filesystem::path& path, const Trajectory& traj,
                           const GasParams& gp);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const; // -1 if absent
};

CsvTable read_csv(const std::filesystem::path& path);

// Initial state from a CSV with columns rho,m,S (extra columns ignored);
// the row count must match the grid.
FluidState load_initial_csv(const std::filesystem::path& path, const Grid1D& grid);

} // namespace eulersel

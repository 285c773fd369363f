#include "eulersel/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eulersel/util.hpp"

namespace eulersel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string state_file_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "state_%05d.csv", k);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

} // namespace

void save_trajectory(const fs::path& dir, const Trajectory& traj, const GasParams& gp) {
  fs::create_directories(dir);
  json meta;
  meta["schema"] = 1;
  meta["gamma"] = gp.gamma;
  meta["E0"] = traj.E0;
  meta["M0"] = traj.M0;
  meta["grid"] = {{"n_cells", traj.states[0].grid.n_cells},
                  {"x_min", traj.states[0].grid.x_min},
                  {"x_max", traj.states[0].grid.x_max}};
  meta["times"] = traj.times;
  meta["provenance"] = {{"label", traj.meta.label},
                        {"viscosity", traj.meta.viscosity},
                        {"events", traj.meta.events}};
  write_text(dir / "meta.json", meta.dump(2) + "\n");

  for (int k = 0; k < traj.n_samples(); ++k) {
    const FluidState& s = traj.states[k];
    std::ostringstream os;
    os << "t,cell_index,x_center,rho,m,S\n";
    for (int i = 0; i < s.n(); ++i) {
      os << fmt_g17(traj.times[k]) << ',' << i << ',' << fmt_g17(s.grid.x_center(i)) << ','
         << fmt_g17(s.rho[i]) << ',' << fmt_g17(s.m[i]) << ',' << fmt_g17(s.S[i]) << '\n';
    }
    write_text(dir / state_file_name(k), os.str());
  }
}

LoadedTrajectory load_trajectory(const fs::path& dir) {
  std::ifstream in(dir / "meta.json");
  if (!in) throw std::runtime_error("cannot read " + (dir / "meta.json").string());
  json meta = json::parse(in);

  LoadedTrajectory out;
  out.gamma = meta.at("gamma").get<double>();
  out.traj.E0 = meta.at("E0").get<double>();
  out.traj.M0 = meta.at("M0").get<double>();
  out.traj.times = meta.at("times").get<std::vector<double>>();
  out.traj.meta.label = meta.at("provenance").at("label").get<std::string>();
  out.traj.meta.viscosity = meta.at("provenance").value("viscosity", 0.0);
  out.traj.meta.events = meta.at("provenance").at("events").get<std::vector<std::string>>();
  const Grid1D grid(meta.at("grid").at("n_cells").get<int>(),
                    meta.at("grid").at("x_min").get<double>(),
                    meta.at("grid").at("x_max").get<double>());

  out.traj.states.reserve(out.traj.times.size());
  for (size_t k = 0; k < out.traj.times.size(); ++k) {
    const CsvTable table = read_csv(dir / state_file_name(static_cast<int>(k)));
    const int c_rho = table.column("rho"), c_m = table.column("m"), c_S = table.column("S");
    if (c_rho < 0 || c_m < 0 || c_S < 0)
      throw std::runtime_error("state CSV missing rho/m/S columns");
    if (static_cast<int>(table.rows.size()) != grid.n_cells)
      throw std::runtime_error("state CSV row count does not match grid");
    std::vector<double> rho(grid.n_cells), m(grid.n_cells), S(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
      rho[i] = table.rows[i][c_rho];
      m[i] = table.rows[i][c_m];
      S[i] = table.rows[i][c_S];
    }
    out.traj.states.emplace_back(grid, std::move(rho), std::move(m), std::move(S));
  }
  return out;
}

void write_diagnostics_csv(const fs::path& path, const Trajectory& traj, const GasParams& gp) {
  std::ostringstream os;
  os << "t,total_mass,total_entropy,mean_energy,defect\n";
  for (int k = 0; k < traj.n_samples(); ++k) {
    const FluidState& s = traj.states[k];
    const double energy = mean_energy(s, gp);
    const auto d = defect(k, traj, gp);
    os << fmt_g17(traj.times[k]) << ',' << fmt_g17(total_mass(s)) << ','
       << fmt_g17(total_entropy(s)) << ',' << fmt_g17(energy) << ',' << fmt_g17(d.value) << '\n';
  }
  write_text(path, os.str());
}

int CsvTable::column(const std::string& name) const {
  for (size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) return static_cast<int>(c);
  return -1;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());
  std::stringstream hs(line);
  std::string tok;
  while (std::getline(hs, tok, ',')) table.header.push_back(tok);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != table.header.size())
      throw std::runtime_error("ragged CSV row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

FluidState load_initial_csv(const fs::path& path, const Grid1D& grid) {
  const CsvTable table = read_csv(path);
  const int c_rho = table.column("rho"), c_m = table.column("m"), c_S = table.column("S");
  if (c_rho < 0 || c_m < 0 || c_S < 0)
    throw std::runtime_error("initial-state CSV needs rho,m,S columns: " + path.string());
  if (static_cast<int>(table.rows.size()) != grid.n_cells)
    throw std::runtime_error("initial-state CSV row count does not match the grid");
  std::vector<double> rho(grid.n_cells), m(grid.n_cells), S(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) {
    rho[i] = table.rows[i][c_rho];
    m[i] = table.rows[i][c_m];
    S[i] = table.rows[i][c_S];
  }
  return FluidState(grid, std::move(rho), std::move(m), std::move(S));
}

} // namespace eulersel

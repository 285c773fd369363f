#include "eulersel/config.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "eulersel/io.hpp"

namespace eulersel {

using nlohmann::json;

namespace {

SelectionMethod method_from_name(const std::string& name) {
  if (name == "two_step") return SelectionMethod::two_step;
  if (name == "one_step") return SelectionMethod::one_step;
  throw std::invalid_argument("unknown selection method: " + name);
}

} // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  json j = json::parse(in);

  ExperimentConfig cfg;
  if (j.contains("gas")) cfg.gas = GasParams(j["gas"].value("gamma", 1.4));
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    cfg.grid = Grid1D(g.value("n_cells", 100), g.value("x_min", 0.0), g.value("x_max", 1.0));
  }
  if (j.contains("initial")) {
    const auto& s = j["initial"];
    cfg.initial.preset = s.value("preset", "constant");
    cfg.initial.rho = s.value("rho", 1.0);
    cfg.initial.u = s.value("u", 0.0);
    cfg.initial.theta = s.value("theta", 1.0);
    cfg.initial.amplitude = s.value("amplitude", 0.05);
    cfg.initial.width = s.value("width", 0.1);
    cfg.initial.center = s.value("center", 0.5);
    cfg.initial.file = s.value("file", std::string());
  }
  if (j.contains("energy_budget")) {
    cfg.budget.mode = j["energy_budget"].value("mode", "initial");
    cfg.budget.value = j["energy_budget"].value("value", 0.0);
  }
  if (j.contains("s_floor")) {
    if (j["s_floor"].is_string()) {
      cfg.s_floor_mode = j["s_floor"].get<std::string>();
      if (cfg.s_floor_mode != "auto")
        throw std::invalid_argument("s_floor must be \"auto\" or a number");
    } else {
      cfg.s_floor_mode = "value";
      cfg.s_floor_value = j["s_floor"].get<double>();
    }
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    cfg.base.t_end = s.value("t_end", 1.0);
    cfg.base.out_dt = s.value("out_dt", 0.01);
    cfg.base.cfl = s.value("cfl", 0.45);
    cfg.base.rho_floor = s.value("rho_floor", 1e-10);
    if (s.contains("fluxes")) {
      cfg.fluxes.clear();
      for (const auto& f : s["fluxes"]) cfg.fluxes.push_back(flux_from_name(f.get<std::string>()));
    }
    if (s.contains("viscosities")) {
      cfg.viscosities = s["viscosities"].get<std::vector<double>>();
    }
  }
  if (j.contains("lifts")) {
    for (const auto& l : j["lifts"]) {
      LiftEvent ev;
      ev.tau = l.at("tau").get<double>();
      if (l.contains("delta") && !l["delta"].is_string()) {
        ev.all = false;
        ev.delta = l["delta"].get<double>();
      } else {
        ev.all = true; // "all" or absent
      }
      cfg.lifts.push_back(ev);
    }
  }
  if (j.contains("quadrature")) {
    cfg.quad.t_max = j["quadrature"].value("t_max", 10.0);
    const std::string rule = j["quadrature"].value("rule", "trapezoid");
    if (rule == "trapezoid")
      cfg.quad.rule = QuadRule::trapezoid;
    else if (rule == "left_riemann")
      cfg.quad.rule = QuadRule::left_riemann;
    else
      throw std::invalid_argument("unknown quadrature rule: " + rule);
  }
  if (j.contains("selection")) {
    const auto& s = j["selection"];
    if (s.contains("methods")) {
      cfg.selection.methods.clear();
      for (const auto& m : s["methods"])
        cfg.selection.methods.push_back(method_from_name(m.get<std::string>()));
    }
    cfg.selection.eps_tie = s.value("eps_tie", 1e-8);
    cfg.selection.close_convex_hull = s.value("close_convex_hull", 0);
    cfg.selection.q = s.value("q", 0.0);
  }
  if (j.contains("semigroup")) {
    cfg.semigroup.tau = j["semigroup"].value("tau", 0.5);
    cfg.semigroup.tol = j["semigroup"].value("tol", 1e-8);
  }
  if (j.contains("output")) {
    cfg.output.dir = j["output"].value("dir", "out");
    cfg.output.save_states = j["output"].value("save_states", false);
  }
  cfg.seed = j.value("seed", 0);
  cfg.jobs = j.value("jobs", 1);
  return cfg;
}

FluidState make_initial_state(const ExperimentConfig& cfg) {
  const Grid1D& g = cfg.grid;
  const GasParams& gp = cfg.gas;
  std::vector<double> rho(g.n_cells), m(g.n_cells), S(g.n_cells);
  const std::string& preset = cfg.initial.preset;
  if (preset == "constant") {
    for (int i = 0; i < g.n_cells; ++i) {
      rho[i] = cfg.initial.rho;
      m[i] = cfg.initial.rho * cfg.initial.u;
      S[i] = entropy_of(gp, cfg.initial.rho, cfg.initial.theta);
    }
  } else if (preset == "sod") {
    const double x_mid = 0.5 * (g.x_min + g.x_max);
    for (int i = 0; i < g.n_cells; ++i) {
      const bool left = g.x_center(i) < x_mid;
      const double r = left ? 1.0 : 0.125;
      const double p = left ? 1.0 : 0.1;
      rho[i] = r;
      m[i] = 0.0;
      S[i] = entropy_of(gp, r, p / r); // p = rho*theta in these units
    }
  } else if (preset == "acoustic_pulse") {
    for (int i = 0; i < g.n_cells; ++i) {
      const double x = g.x_center(i);
      const double dr = (x - cfg.initial.center) / cfg.initial.width;
      const double r = 1.0 + cfg.initial.amplitude * std::exp(-dr * dr);
      rho[i] = r;
      m[i] = 0.0;
      S[i] = entropy_of(gp, r, std::pow(r, gp.gamma - 1.0)); // isentropic, s = 0
    }
  } else if (preset == "custom") {
    if (cfg.initial.file.empty())
      throw std::invalid_argument("custom preset requires initial.file");
    return load_initial_csv(cfg.initial.file, g);
  } else {
    throw std::invalid_argument("unknown initial preset: " + preset);
  }
  return FluidState(g, std::move(rho), std::move(m), std::move(S));
}

DataSpec build_data_spec(const ExperimentConfig& cfg) {
  DataSpec spec;
  spec.initial = make_initial_state(cfg);
  const double E_init = mean_energy(spec.initial, cfg.gas);
  if (cfg.budget.mode == "initial")
    spec.E0 = E_init;
  else if (cfg.budget.mode == "absolute")
    spec.E0 = cfg.budget.value;
  else if (cfg.budget.mode == "excess")
    spec.E0 = E_init + cfg.budget.value;
  else
    throw std::invalid_argument("unknown energy budget mode: " + cfg.budget.mode);

  if (cfg.s_floor_mode == "auto") {
    double s_min = spec.initial.S[0] / spec.initial.rho[0];
    for (int i = 1; i < spec.initial.n(); ++i)
      s_min = std::min(s_min, spec.initial.S[i] / spec.initial.rho[i]);
    spec.s_floor = s_min;
  } else {
    spec.s_floor = cfg.s_floor_value;
  }

  const auto check = in_data_space(spec, cfg.gas);
  if (!check.ok)
    throw std::invalid_argument("configuration violates the data space:\n" + check.report);
  return spec;
}

std::vector<SolverConfig> solver_matrix(const ExperimentConfig& cfg) {
  std::vector<SolverConfig> matrix;
  for (const auto flux : cfg.fluxes) {
    for (const double eps : cfg.viscosities) {
      SolverConfig sc = cfg.base;
      sc.flux = flux;
      sc.art_visc = eps;
      matrix.push_back(sc);
    }
  }
  return matrix;
}

} // namespace eulersel

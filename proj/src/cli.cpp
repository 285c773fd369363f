#include "eulersel/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "eulersel/ensemble.hpp"
#include "eulersel/io.hpp"
#include "eulersel/plot.hpp"
#include "eulersel/residuals.hpp"
#include "eulersel/util.hpp"

namespace eulersel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string candidate_csv_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "candidate_%03d.csv", i);
  return buf;
}

json report_entry(const SelectionReport& rep) {
  json r;
  r["method"] = method_name(rep.method);
  r["selected"] = rep.selected;
  r["selected_label"] = rep.labels.empty() ? "" : rep.labels[rep.selected];
  r["tie_set"] = rep.tie_set;
  json values = json::array();
  for (const auto& v : rep.values) {
    values.push_back({{"F_S", v.F_S},
                      {"F_E", v.F_E},
                      {"F_D", v.F_D},
                      {"tail_S", v.tail_S},
                      {"tail_E", v.tail_E},
                      {"tail_D", v.tail_D}});
  }
  r["values"] = values;
  r["diagnostics"] = rep.diagnostics;
  r["warnings"] = rep.warnings;
  return r;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::string summary_table(const std::vector<SelectionReport>& reports) {
  std::ostringstream os;
  char buf[256];
  if (reports.empty()) return "";
  const auto& base = reports[0];
  os << "  #  candidate                        F_S             F_E             F_D\n";
  for (size_t i = 0; i < base.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%3zu  %-28s %15.8e %15.8e %15.8e", i,
                  base.labels[i].c_str(), base.values[i].F_S, base.values[i].F_E,
                  base.values[i].F_D);
    os << buf << "\n";
  }
  for (const auto& rep : reports) {
    std::snprintf(buf, sizeof(buf), "%s selects #%d (%s)", method_name(rep.method), rep.selected,
                  rep.labels[rep.selected].c_str());
    os << buf << "\n";
  }
  return os.str();
}

// Selection for every requested method plus the doubled-horizon stability
// rerun. The horizon is capped by the trajectory length.
json run_selections(const CandidateSet& cs, const ExperimentConfig& cfg,
                    std::vector<SelectionReport>& reports, bool& all_valid) {
  const double t_last = cs.candidates[0].times.back();
  QuadratureSpec qs = cfg.quad;
  qs.t_max = std::min(qs.t_max, t_last);
  QuadratureSpec qs2 = qs;
  qs2.t_max = std::min(2.0 * qs.t_max, t_last);

  json stability = json::array();
  all_valid = true;
  for (const auto method : cfg.selection.methods) {
    SelectionReport rep = select(cs, method, qs, cfg.gas, cfg.selection.eps_tie);
    SelectionReport rep2 = select(cs, method, qs2, cfg.gas, cfg.selection.eps_tie);
    stability.push_back({{"method", method_name(method)},
                         {"t_max", qs.t_max},
                         {"doubled_t_max", qs2.t_max},
                         {"capped", qs2.t_max < 2.0 * qs.t_max - 1e-12},
                         {"selected", rep.selected},
                         {"selected_doubled", rep2.selected},
                         {"stable", rep.selected == rep2.selected}});
    for (const auto& d : rep.diagnostics)
      if (d != "ok") all_valid = false;
    reports.push_back(std::move(rep));
  }
  return stability;
}

json base_report(const CandidateSet& cs, const ExperimentConfig& cfg) {
  json j;
  j["schema"] = 1;
  j["gamma"] = cfg.gas.gamma;
  j["E0"] = cs.spec.E0;
  j["M0"] = total_mass(cs.spec.initial);
  j["labels"] = cs.labels;
  j["failures"] = cs.failures;
  j["quadrature"] = {{"t_max", std::min(cfg.quad.t_max, cs.candidates.empty()
                                                            ? cfg.quad.t_max
                                                            : cs.candidates[0].times.back())},
                     {"rule", cfg.quad.rule == QuadRule::trapezoid ? "trapezoid" : "left_riemann"}};
  return j;
}

} // namespace

int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const DataSpec spec = build_data_spec(cfg);
  SolverConfig sc = cfg.base;
  sc.flux = cfg.fluxes.at(0);
  sc.art_visc = cfg.viscosities.at(0);
  const Trajectory traj = run(spec, sc, cfg.gas); // validates before returning

  write_diagnostics_csv(out_dir / "diagnostics.csv", traj, cfg.gas);
  save_trajectory(out_dir / "trajectory", traj, cfg.gas);

  CandidateSet cs;
  cs.spec = spec;
  cs.candidates.push_back(traj);
  cs.labels.push_back(traj.meta.label);
  std::vector<SelectionReport> reports;
  bool all_valid = true;
  json j = base_report(cs, cfg);
  j["stability"] = run_selections(cs, cfg, reports, all_valid);
  json sel = json::array();
  for (const auto& rep : reports) sel.push_back(report_entry(rep));
  j["selections"] = sel;
  write_json(out_dir / "report.json", j);

  std::cout << "simulate: " << traj.meta.label << ", " << traj.n_samples() << " samples to t="
            << traj.times.back() << "\n"
            << "  mass " << fmt_g17(traj.M0) << ", E0 " << fmt_g17(traj.E0) << ", final defect "
            << fmt_g17(defect(traj.n_samples() - 1, traj, cfg.gas).value) << "\n"
            << "  wrote " << (out_dir / "diagnostics.csv").string() << "\n";
  return all_valid ? 0 : 1;
}

int cmd_select(const ExperimentConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const DataSpec spec = build_data_spec(cfg);
  CandidateSet cs = make_candidates(spec, solver_matrix(cfg), cfg.lifts, cfg.gas, cfg.jobs);
  close_convex_hull(cs, cfg.selection.close_convex_hull, cfg.seed, cfg.gas);

  for (const auto& f : cs.failures) std::cerr << "excluded run: " << f << "\n";
  if (cs.candidates.empty()) {
    std::cerr << "select: all candidate runs failed\n";
    return 1;
  }

  std::vector<SelectionReport> reports;
  bool all_valid = true;
  json j = base_report(cs, cfg);
  j["stability"] = run_selections(cs, cfg, reports, all_valid);
  json sel = json::array();
  for (const auto& rep : reports) sel.push_back(report_entry(rep));
  j["selections"] = sel;
  write_json(out_dir / "report.json", j);

  for (int i = 0; i < cs.size(); ++i)
    write_diagnostics_csv(out_dir / candidate_csv_name(i), cs.candidates[i], cfg.gas);
  if (cfg.output.save_states) {
    for (int i = 0; i < cs.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "cand_%03d", i);
      save_trajectory(out_dir / "candidates" / buf, cs.candidates[i], cfg.gas);
    }
  }

  const std::string table = summary_table(reports);
  std::ofstream(out_dir / "summary.txt") << table;
  std::cout << table;
  for (const auto& s : j["stability"])
    std::cout << s["method"].get<std::string>() << " horizon doubling: "
              << (s["stable"].get<bool>() ? "stable" : "CHANGED") << "\n";
  return all_valid ? 0 : 1;
}

int cmd_verify(const ExperimentConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const DataSpec spec = build_data_spec(cfg);

  // Reuse persisted candidates when present, otherwise run fresh.
  CandidateSet cs;
  cs.spec = spec;
  for (int i = 0;; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "cand_%03d", i);
    const fs::path dir = out_dir / "candidates" / buf;
    if (!fs::exists(dir / "meta.json")) break;
    auto loaded = load_trajectory(dir);
    cs.candidates.push_back(std::move(loaded.traj));
    cs.labels.push_back(cs.candidates.back().meta.label);
  }
  if (cs.candidates.empty())
    cs = make_candidates(spec, solver_matrix(cfg), cfg.lifts, cfg.gas, cfg.jobs);

  const Trajectory& first = cs.candidates.at(0);
  const Grid1D& grid = first.states[0].grid;
  const auto basis = default_basis(first.times.back(), grid.x_min, grid.x_max);

  // Residual thresholds scale with the data resolution. The entropy sign
  // bound is absolute for inviscid runs and admits the O(eps) diffusive
  // entropy flux of viscous candidates.
  const double res_tol = 2.0 * (grid.dx + first.out_dt());
  const double entropy_tol = 1e-8;

  struct CandidateResult {
    std::string csv;
    bool pass = true;
    double entropy_tol_c = 0.0;
    double max_cont = 0.0, max_mom = 0.0, max_entropy = -1e300;
    EnergyCompatReport ec;
  };
  std::vector<CandidateResult> results(cs.size());

  // Checks run in the worker pool; every worker fills its own slot.
  parallel_for(cs.size(), cfg.jobs, [&](int c) {
    const Trajectory& traj = cs.candidates[c];
    CandidateResult& r = results[c];
    r.entropy_tol_c = entropy_tol + 0.5 * traj.meta.viscosity;
    std::ostringstream csv;
    for (const auto& phi : basis) {
      const double rc = continuity_residual(traj, phi);
      const bool pc = std::abs(rc) <= res_tol;
      r.pass = r.pass && pc;
      r.max_cont = std::max(r.max_cont, std::abs(rc));
      csv << c << ",continuity," << phi.id() << ",-1," << fmt_g17(rc) << ",0," << pc << "\n";

      if (phi.wall_zero()) {
        const auto rm = momentum_residual(traj, phi, cfg.gas);
        const bool pm = rm.pass(res_tol);
        r.pass = r.pass && pm;
        r.max_mom = std::max(r.max_mom, std::abs(rm.residual));
        csv << c << ",momentum," << phi.id() << ",-1," << fmt_g17(rm.residual) << ','
            << fmt_g17(rm.conc_bound) << ',' << pm << "\n";
      }

      const double rs = entropy_residual(traj, phi);
      const bool ps = rs <= r.entropy_tol_c;
      r.pass = r.pass && ps;
      r.max_entropy = std::max(r.max_entropy, rs);
      csv << c << ",entropy," << phi.id() << ",-1," << fmt_g17(rs) << ",0," << ps << "\n";
    }
    r.ec = energy_compat_check(traj, traj.E0, cfg.gas, 1);
    r.pass = r.pass && r.ec.pass;
    for (int k : r.ec.failing)
      csv << c << ",energy_compat,budget," << k << ',' << fmt_g17(r.ec.dmv_energy[k]) << ','
          << fmt_g17(traj.E0) << ",0\n";
    if (r.ec.pass) csv << c << ",energy_compat,budget,-1,0," << fmt_g17(traj.E0) << ",1\n";
    r.csv = csv.str();
  });

  std::ostringstream csv;
  csv << "candidate,condition,phi,instant,value,bound,pass\n";
  bool all_pass = true;
  json per_candidate = json::array();
  for (int c = 0; c < cs.size(); ++c) {
    const CandidateResult& r = results[c];
    csv << r.csv;
    per_candidate.push_back({{"label", cs.labels[c]},
                             {"pass", r.pass},
                             {"entropy_tol", r.entropy_tol_c},
                             {"max_continuity", r.max_cont},
                             {"max_momentum", r.max_mom},
                             {"max_entropy_residual", r.max_entropy},
                             {"energy_compat", r.ec.pass}});
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << cs.labels[c] << "  cont " << r.max_cont
              << "  mom " << r.max_mom << "  entropy " << r.max_entropy << "\n";
    if (!r.ec.pass)
      std::cout << "  energy compatibility violated first at instant " << r.ec.failing.front()
                << "\n";
  }

  std::ofstream(out_dir / "residuals.csv") << csv.str();
  json j;
  j["schema"] = 1;
  j["residual_tol"] = res_tol;
  j["entropy_tol"] = entropy_tol;
  j["candidates"] = per_candidate;
  j["failures"] = cs.failures;
  write_json(out_dir / "residual_report.json", j);
  return all_pass ? 0 : 1;
}

int cmd_semigroup(const ExperimentConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const DataSpec spec = build_data_spec(cfg);

  json j;
  j["schema"] = 1;
  j["tau"] = cfg.semigroup.tau;
  const bool closed = cfg.lifts.empty() && cfg.selection.close_convex_hull == 0;
  j["concatenation_closed"] = closed;
  if (!closed) {
    j["note"] = "family not concatenation-closed; distance not meaningful";
    write_json(out_dir / "semigroup.json", j);
    std::cout << "semigroup: family not concatenation-closed; distance not meaningful\n";
    return 0;
  }

  const auto matrix = solver_matrix(cfg);
  CandidateSet cs = make_candidates(spec, matrix, {}, cfg.gas, cfg.jobs);
  if (cs.candidates.empty()) {
    std::cerr << "semigroup: all candidate runs failed\n";
    return 1;
  }
  const double t_end = cs.candidates[0].times.back();
  QuadratureSpec qs = cfg.quad;
  qs.t_max = std::min(qs.t_max, t_end);
  const SelectionMethod method = cfg.selection.methods.at(0);
  const SelectionReport rep = select(cs, method, qs, cfg.gas, cfg.selection.eps_tie);
  const Trajectory& winner = cs.candidates[rep.selected];

  // Restart the whole pipeline from the selected state at tau.
  const int k_tau = winner.index_of_time(cfg.semigroup.tau);
  DataSpec restart;
  restart.initial = winner.states[k_tau];
  restart.E0 = spec.E0;
  double s_min = restart.initial.S[0] / restart.initial.rho[0];
  for (int i = 1; i < restart.initial.n(); ++i)
    s_min = std::min(s_min, restart.initial.S[i] / restart.initial.rho[i]);
  restart.s_floor = s_min;

  std::vector<SolverConfig> matrix2 = matrix;
  for (auto& sc : matrix2) sc.t_end = t_end - cfg.semigroup.tau;
  CandidateSet cs2 = make_candidates(restart, matrix2, {}, cfg.gas, cfg.jobs);
  QuadratureSpec qs2 = cfg.quad;
  qs2.t_max = std::min(qs2.t_max, t_end - cfg.semigroup.tau);
  const SelectionReport rep2 = select(cs2, method, qs2, cfg.gas, cfg.selection.eps_tie);
  const Trajectory& winner2 = cs2.candidates[rep2.selected];

  // Tail of the original selection, rebased to the restart clock.
  Trajectory tail;
  tail.E0 = winner.E0;
  tail.M0 = winner.M0;
  for (int k = k_tau; k < winner.n_samples(); ++k) {
    tail.times.push_back(winner.times[k] - cfg.semigroup.tau);
    tail.states.push_back(winner.states[k]);
  }
  const double distance = dist_q(tail, winner2, 2.0, qs2);
  const bool pass = distance <= cfg.semigroup.tol;

  j["method"] = method_name(method);
  j["selected"] = rep.selected;
  j["selected_label"] = cs.labels[rep.selected];
  j["restart_selected"] = rep2.selected;
  j["restart_selected_label"] = cs2.labels[rep2.selected];
  j["distance"] = distance;
  j["tol"] = cfg.semigroup.tol;
  j["pass"] = pass;
  write_json(out_dir / "semigroup.json", j);
  std::cout << "semigroup: tau=" << cfg.semigroup.tau << " selected #" << rep.selected
            << " restart #" << rep2.selected << " distance " << distance
            << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_plot(const fs::path& run_dir) {
  std::vector<fs::path> csvs;
  std::vector<std::string> labels;
  if (fs::exists(run_dir / "diagnostics.csv")) {
    csvs.push_back(run_dir / "diagnostics.csv");
    labels.push_back("run");
  }
  for (int i = 0;; ++i) {
    const fs::path p = run_dir / candidate_csv_name(i);
    if (!fs::exists(p)) break;
    csvs.push_back(p);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%d", i);
    labels.push_back(buf);
  }
  if (csvs.empty()) {
    std::cerr << "plot: no diagnostics CSV in " << run_dir.string() << "\n";
    return 1;
  }

  // Prefer report labels when available.
  std::vector<std::string> report_labels;
  json report;
  if (fs::exists(run_dir / "report.json")) {
    std::ifstream in(run_dir / "report.json");
    report = json::parse(in);
    report_labels = report.value("labels", std::vector<std::string>{});
  }

  const char* columns[3] = {"total_entropy", "mean_energy", "defect"};
  const char* files[3] = {"entropy.svg", "mean_energy.svg", "defect.svg"};
  for (int plot_i = 0; plot_i < 3; ++plot_i) {
    std::vector<PlotSeries> series;
    for (size_t c = 0; c < csvs.size(); ++c) {
      const CsvTable table = read_csv(csvs[c]);
      if (table.rows.empty()) {
        std::cerr << "plot: empty CSV " << csvs[c].string() << "\n";
        return 1;
      }
      const int ct = table.column("t"), cv = table.column(columns[plot_i]);
      if (ct < 0 || cv < 0) {
        std::cerr << "plot: missing column " << columns[plot_i] << " in " << csvs[c].string()
                  << "\n";
        return 1;
      }
      PlotSeries s;
      s.label = (csvs.size() == report_labels.size()) ? report_labels[c] : labels[c];
      for (const auto& row : table.rows) {
        s.x.push_back(row[ct]);
        s.y.push_back(row[cv]);
      }
      series.push_back(std::move(s));
    }
    write_line_svg(run_dir / files[plot_i], columns[plot_i], "t", columns[plot_i], series);
  }

  std::vector<std::string> cats;
  std::vector<std::pair<std::string, std::vector<double>>> groups{{"F_S", {}}, {"F_E", {}},
                                                                  {"F_D", {}}};
  if (!report.is_null() && report.contains("selections") && !report["selections"].empty()) {
    const auto& values = report["selections"][0]["values"];
    for (size_t i = 0; i < values.size(); ++i) {
      cats.push_back(csvs.size() == report_labels.size() && i < report_labels.size()
                         ? report_labels[i]
                         : std::to_string(i));
      groups[0].second.push_back(values[i]["F_S"].get<double>());
      groups[1].second.push_back(values[i]["F_E"].get<double>());
      groups[2].second.push_back(values[i]["F_D"].get<double>());
    }
  } else {
    // No selection report: chart the final diagnostics values instead.
    groups = {{"final entropy", {}}, {"final energy", {}}, {"final defect", {}}};
    for (size_t c = 0; c < csvs.size(); ++c) {
      const CsvTable table = read_csv(csvs[c]);
      cats.push_back(labels[c]);
      const auto& last = table.rows.back();
      groups[0].second.push_back(last[table.column("total_entropy")]);
      groups[1].second.push_back(last[table.column("mean_energy")]);
      groups[2].second.push_back(last[table.column("defect")]);
    }
  }
  write_bar_svg(run_dir / "functionals.svg", "selection functionals", cats, groups);
  std::cout << "plot: wrote entropy.svg mean_energy.svg defect.svg functionals.svg in "
            << run_dir.string() << "\n";
  return 0;
}

} // namespace eulersel

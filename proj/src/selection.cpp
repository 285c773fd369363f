#include "eulersel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace eulersel {

namespace {

void require_comparable(const CandidateSet& cs) {
  if (cs.candidates.empty()) throw std::invalid_argument("selection: empty candidate set");
  for (int i = 1; i < cs.size(); ++i) {
    if (!same_times(cs.candidates[0], cs.candidates[i]) ||
        !same_grid(cs.candidates[0].states[0].grid, cs.candidates[i].states[0].grid))
      throw std::invalid_argument("selection: candidates must share grid and sample times");
  }
}

} // namespace

const char* method_name(SelectionMethod m) {
  return m == SelectionMethod::two_step ? "two_step" : "one_step";
}

std::vector<int> step1_tieset(const CandidateSet& cs, const QuadratureSpec& qs, double eps_tie) {
  require_comparable(cs);
  std::vector<double> fs(cs.size());
  for (int i = 0; i < cs.size(); ++i) fs[i] = F_S(cs.candidates[i], qs).value;
  const double best = *std::max_element(fs.begin(), fs.end());
  const double cut = best - eps_tie * (1.0 + std::abs(best));
  std::vector<int> tie;
  for (int i = 0; i < cs.size(); ++i)
    if (fs[i] >= cut) tie.push_back(i);
  return tie;
}

int step2_argmin(const CandidateSet& cs, const std::vector<int>& tie, const QuadratureSpec& qs,
                 const GasParams& gp, std::vector<std::string>* warnings) {
  if (tie.empty()) throw std::invalid_argument("step2_argmin: empty tie set");
  int sel = tie[0];
  double best = F_E(cs.candidates[sel], qs, gp).value;
  bool exact_tie = false;
  for (size_t k = 1; k < tie.size(); ++k) {
    const double v = F_E(cs.candidates[tie[k]], qs, gp).value;
    if (v < best) {
      best = v;
      sel = tie[k];
      exact_tie = false;
    } else if (v == best) {
      exact_tie = true;
    }
  }
  if (exact_tie && warnings) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "step 2: exact F_E tie, kept lowest index %d (degenerate sample)", sel);
    warnings->push_back(buf);
  }
  return sel;
}

SelectionReport select(const CandidateSet& cs, SelectionMethod method, const QuadratureSpec& qs,
                       const GasParams& gp, double eps_tie) {
  require_comparable(cs);
  SelectionReport rep;
  rep.method = method;
  rep.labels = cs.labels;
  rep.values.resize(cs.size());
  for (int i = 0; i < cs.size(); ++i) {
    const auto fs = F_S(cs.candidates[i], qs);
    const auto fe = F_E(cs.candidates[i], qs, gp);
    const auto fd = F_D(cs.candidates[i], qs, gp);
    rep.values[i] = {fs.value, fe.value, fd.value, fs.tail_bound, fe.tail_bound, fd.tail_bound};
    const auto val = validate(cs.candidates[i], gp);
    std::string diag = val.ok ? "ok" : "invalid";
    for (const auto& v : val.violations) (diag += "; ") += v;
    rep.diagnostics.push_back(diag);
  }
  for (const auto& f : cs.failures) rep.warnings.push_back("excluded run: " + f);

  if (method == SelectionMethod::two_step) {
    rep.tie_set = step1_tieset(cs, qs, eps_tie);
    rep.selected = step2_argmin(cs, rep.tie_set, qs, gp, &rep.warnings);
  } else {
    double best = rep.values[0].F_D;
    rep.selected = 0;
    bool exact_tie = false;
    for (int i = 1; i < cs.size(); ++i) {
      if (rep.values[i].F_D < best) {
        best = rep.values[i].F_D;
        rep.selected = i;
        exact_tie = false;
      } else if (rep.values[i].F_D == best) {
        exact_tie = true;
      }
    }
    const double cut = best + eps_tie * (1.0 + std::abs(best));
    for (int i = 0; i < cs.size(); ++i)
      if (rep.values[i].F_D <= cut) rep.tie_set.push_back(i);
    if (exact_tie)
      rep.warnings.push_back("one step: exact F_D tie, kept lowest index (degenerate sample)");
  }
  return rep;
}

bool diperna_leq(const Trajectory& a, const Trajectory& b, double tol) {
  if (!same_times(a, b)) throw std::invalid_argument("diperna_leq: sample times differ");
  for (size_t k = 0; k < a.times.size(); ++k)
    if (total_entropy(a.states[k]) > total_entropy(b.states[k]) + tol) return false;
  return true;
}

bool is_diperna_maximal(int i, const CandidateSet& cs, double tol) {
  if (i < 0 || i >= cs.size()) throw std::out_of_range("is_diperna_maximal: bad index");
  for (int j = 0; j < cs.size(); ++j) {
    if (j == i) continue;
    if (!diperna_leq(cs.candidates[i], cs.candidates[j], tol)) continue;
    for (size_t k = 0; k < cs.candidates[i].times.size(); ++k) {
      const double si = total_entropy(cs.candidates[i].states[k]);
      const double sj = total_entropy(cs.candidates[j].states[k]);
      if (std::abs(si - sj) > tol) return false;
    }
  }
  return true;
}

bool is_absolute_maximiser(int i, const CandidateSet& cs, double tol) {
  if (i < 0 || i >= cs.size()) throw std::out_of_range("is_absolute_maximiser: bad index");
  for (int j = 0; j < cs.size(); ++j)
    if (!diperna_leq(cs.candidates[j], cs.candidates[i], tol)) return false;
  return true;
}

double dist_q(const Trajectory& a, const Trajectory& b, double q, const QuadratureSpec& qs) {
  if (!same_times(a, b)) throw std::invalid_argument("dist_q: sample times differ");
  if (!same_grid(a.states[0].grid, b.states[0].grid))
    throw std::invalid_argument("dist_q: grids differ");
  const double dt = uniform_dt(a);
  const int n_used = quad_nodes(a.n_samples(), dt, qs.t_max);
  const auto w = quad_weights(n_used, dt, qs.rule);
  const double dx = a.states[0].grid.dx;
  double acc = 0.0;
  for (int k = 0; k < n_used; ++k) {
    const FluidState& sa = a.states[k];
    const FluidState& sb = b.states[k];
    double cell_sum = 0.0;
    for (int i = 0; i < sa.n(); ++i) {
      cell_sum += std::pow(std::abs(sa.rho[i] - sb.rho[i]), q) +
                  std::pow(std::abs(sa.m[i] - sb.m[i]), q) +
                  std::pow(std::abs(sa.S[i] - sb.S[i]), q);
    }
    acc += w[k] * dx * cell_sum;
  }
  return std::pow(acc, 1.0 / q);
}

int moreau_yosida_argmin(const CandidateSet& cs, const std::vector<int>& tie, double eps,
                         double q, const QuadratureSpec& qs, const GasParams& gp) {
  if (!(eps > 0.0)) throw std::invalid_argument("moreau_yosida_argmin: eps must be positive");
  const double q_max = 2.0 * gp.gamma / (gp.gamma + 1.0);
  if (!(q > 1.0 && q <= q_max + 1e-12))
    throw std::invalid_argument("moreau_yosida_argmin: q outside (1, 2*gamma/(gamma+1)]");
  if (tie.empty()) throw std::invalid_argument("moreau_yosida_argmin: empty tie set");
  require_comparable(cs);

  std::vector<double> fe(cs.size());
  for (int j = 0; j < cs.size(); ++j) fe[j] = F_E(cs.candidates[j], qs, gp).value;

  int sel = tie[0];
  double best = 0.0;
  bool first = true;
  for (int i : tie) {
    double reg = fe[i]; // j = i contributes F_E(i) with zero distance
    for (int j = 0; j < cs.size(); ++j) {
      if (j == i) continue;
      const double d = dist_q(cs.candidates[i], cs.candidates[j], q, qs);
      reg = std::min(reg, std::pow(d, q) / eps + fe[j]);
    }
    if (first || reg < best) {
      best = reg;
      sel = i;
      first = false;
    }
  }
  return sel;
}

} // namespace eulersel

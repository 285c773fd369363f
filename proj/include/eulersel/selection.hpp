#pragma once

// Selection over a finite candidate family: argmax of the discounted total
// entropy, then argmin of the discounted mean energy (two-step), or argmin
// of F_D = F_E - theta_bar * F_S directly (one-step). Includes the partial
// order on entropy trajectories and the proximal-regularization cross-check.

#include "eulersel/functionals.hpp"

namespace eulersel {

enum class SelectionMethod { two_step, one_step };

const char* method_name(SelectionMethod m);

struct CandidateValues {
  double F_S = 0.0, F_E = 0.0, F_D = 0.0;
  double tail_S = 0.0, tail_E = 0.0, tail_D = 0.0;
};

struct SelectionReport {
  SelectionMethod method = SelectionMethod::two_step;
  std::vector<CandidateValues> values;
  std::vector<std::string> labels;
  std::vector<int> tie_set; // step-1 ties (two-step) or near-minimal F_D set
  int selected = -1;
  std::vector<std::string> diagnostics; // per-candidate invariant summary
  std::vector<std::string> warnings;
};

// Indices within eps_tie*(1 + |max F_S|) of the best entropy functional.
std::vector<int> step1_tieset(const CandidateSet& cs, const QuadratureSpec& qs, double eps_tie);

// Minimal F_E within the tie set; exact ties go to the lowest index with a
// logged warning.
int step2_argmin(const CandidateSet& cs, const std::vector<int>& tie, const QuadratureSpec& qs,
                 const GasParams& gp, std::vector<std::string>* warnings = nullptr);

SelectionReport select(const CandidateSet& cs, SelectionMethod method, const QuadratureSpec& qs,
                       const GasParams& gp, double eps_tie = 1e-8);

// a precedes b: a's total entropy never exceeds b's at any sample instant.
bool diperna_leq(const Trajectory& a, const Trajectory& b, double tol = 1e-10);

// No candidate strictly entropy-dominates i.
bool is_diperna_maximal(int i, const CandidateSet& cs, double tol = 1e-10);

// i entropy-dominates every candidate.
bool is_absolute_maximiser(int i, const CandidateSet& cs, double tol = 1e-10);

// exp(-t)-weighted discrete L^q distance between two candidates.
double dist_q(const Trajectory& a, const Trajectory& b, double q, const QuadratureSpec& qs);

// argmin over the tie set of the proximally regularized energy functional
// F_E^eps(i) = min_j [ dist_q(i,j)^q / eps + F_E(j) ]; converges to
// step2_argmin as eps -> 0.
int moreau_yosida_argmin(const CandidateSet& cs, const std::vector<int>& tie, double eps,
                         double q, const QuadratureSpec& qs, const GasParams& gp);

} // namespace eulersel

#include "eulersel/ensemble.hpp"

#include <cstdio>

#include "eulersel/util.hpp"

namespace eulersel {

CandidateSet make_candidates(const DataSpec& spec, const std::vector<SolverConfig>& variations,
                             const std::vector<LiftEvent>& lifts, const GasParams& gp, int jobs) {
  if (variations.empty())
    throw std::invalid_argument("make_candidates: need at least one solver variation");
  for (const auto& v : variations) {
    check_solver_config(v);
    if (v.t_end != variations[0].t_end || v.out_dt != variations[0].out_dt)
      throw std::invalid_argument("make_candidates: variations must share t_end and out_dt");
  }

  const int n_base = static_cast<int>(variations.size());
  const int n_total = n_base + static_cast<int>(lifts.size());
  std::vector<Trajectory> runs(n_base);
  std::vector<std::string> errors(n_total);

  parallel_for(n_base, jobs, [&](int i) {
    try {
      runs[i] = run(spec, variations[i], gp);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  // Lifted variants continue the reference (first) variation.
  std::vector<Trajectory> lifted(lifts.size());
  for (size_t j = 0; j < lifts.size(); ++j) {
    const int slot = n_base + static_cast<int>(j);
    if (!errors[0].empty()) {
      errors[slot] = "reference run failed: " + errors[0];
      continue;
    }
    try {
      lifted[j] = lift_and_continue(runs[0], lifts[j], variations[0], gp);
    } catch (const std::exception& e) {
      errors[slot] = e.what();
    }
  }

  CandidateSet cs;
  cs.spec = spec;
  char buf[128];
  for (int i = 0; i < n_base; ++i) {
    const std::string label = variations[i].label();
    if (errors[i].empty()) {
      cs.candidates.push_back(std::move(runs[i]));
      cs.labels.push_back(label);
    } else {
      cs.failures.push_back(label + ": " + errors[i]);
    }
  }
  for (size_t j = 0; j < lifts.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%s +lift@%g", variations[0].label().c_str(), lifts[j].tau);
    const int slot = n_base + static_cast<int>(j);
    if (errors[slot].empty()) {
      cs.candidates.push_back(std::move(lifted[j]));
      cs.labels.push_back(buf);
    } else {
      cs.failures.push_back(std::string(buf) + ": " + errors[slot]);
    }
  }
  return cs;
}

void close_convex_hull(CandidateSet& cs, int k, std::uint64_t seed, const GasParams& gp) {
  if (k <= 0 || cs.size() < 2) return;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, cs.size() - 1);
  std::uniform_int_distribution<int> denom(2, 9);
  char buf[96];
  const int base = cs.size();
  for (int j = 0; j < k; ++j) {
    int a = pick(rng) % base, b = pick(rng) % base;
    if (a == b) b = (b + 1) % base;
    const int q = denom(rng);
    std::uniform_int_distribution<int> numer(1, q - 1);
    const int p = numer(rng);
    const double lambda = static_cast<double>(p) / q;
    Trajectory combo = convex_combine(cs.candidates[a], cs.candidates[b], lambda);
    validate_or_throw(combo, gp);
    std::snprintf(buf, sizeof(buf), "hull %d/%d of [%d,%d]", p, q, a, b);
    combo.meta.label = buf;
    cs.candidates.push_back(std::move(combo));
    cs.labels.emplace_back(buf);
  }
}

} // namespace eulersel

#pragma once

// Candidate-set construction: one run per solver variation plus lifted
// variants of the reference run.

#include <random>

#include "eulersel/concat.hpp"

namespace eulersel {

// Runs every variation from `spec` (all must share t_end and out_dt) and
// applies each lift event to the first variation's trajectory. Failed runs
// land in CandidateSet::failures with their reason, never silently dropped.
CandidateSet make_candidates(const DataSpec& spec, const std::vector<SolverConfig>& variations,
                             const std::vector<LiftEvent>& lifts, const GasParams& gp,
                             int jobs = 1);

// Adjoins k random rational convex combinations of existing candidates.
void close_convex_hull(CandidateSet& cs, int k, std::uint64_t seed, const GasParams& gp);

} // namespace eulersel

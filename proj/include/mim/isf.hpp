#pragma once

#include <cstddef>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/multiplex.hpp"
#include "mim/types.hpp"

namespace mim {

struct GreedyStep {
  UserId user = 0;
  /// Estimated spread of the seed set after adding `user`.
  double sigma = 0.0;
};

struct GreedyResult {
  SeedSet seeds;  // sorted
  std::vector<GreedyStep> trace;  // selection order
  std::size_t evaluations = 0;
};

/// Greedy multiplex seeding with lazy (round-stamped) marginal gains.
///
/// Every user starts in a max-queue keyed by sigma({v}). A popped entry whose
/// gain was computed against the current seed set is accepted; a stale one is
/// re-evaluated as sigma(S + v) - sigma(S) and pushed back. Ties go to the
/// lowest UserId and negative Monte Carlo gains are clamped to zero. After an
/// acceptance the running sigma(S) is set to the accepted entry's own
/// sigma(S + v) evaluation rather than accumulated from gains.
///
/// Returns min(budget, |universe|) seeds.
GreedyResult isf_select(const Multiplex& m, std::size_t budget, const PropagationConfig& cfg,
                        Estimator estimator);

/// Non-lazy greedy: recomputes every marginal gain each round. Same tie rule.
GreedyResult plain_greedy_select(const Multiplex& m, std::size_t budget,
                                 const PropagationConfig& cfg, Estimator estimator);

}  // namespace mim

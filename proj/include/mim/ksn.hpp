#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/mckp.hpp"
#include "mim/multiplex.hpp"
#include "mim/single_layer.hpp"

namespace mim {

enum class ProfitMode {
  multiplex,  ///< profit of T_ij is its spread on the whole multiplex
  per_layer,  ///< profit is the seeder's own single-layer spread estimate
};

std::string_view to_string(ProfitMode mode);
ProfitMode parse_profit_mode(std::string_view text);

struct TableEntry {
  SeedSet seeds;
  std::size_t cost = 0;
  double profit = 0.0;
};

/// entries[i][j] holds the seeding of layer i with budget j, j in [0, l].
struct SeedingTable {
  std::vector<std::vector<TableEntry>> entries;
};

struct KsnOptions {
  SingleLayerSeeder seeder;
  MckpSolver solver = MckpSolver::greedy_half;
  ProfitMode profit_mode = ProfitMode::multiplex;
  /// Used for multiplex-mode profits.
  Estimator profit_estimator = Estimator::monte_carlo;
};

struct KsnReport {
  SeedingTable table;
  std::vector<std::size_t> budget_split;  // j_i per layer
  double mckp_profit = 0.0;
  double table_seconds = 0.0;
  double solve_seconds = 0.0;
  double wall_seconds = 0.0;
  double cpu_seconds = 0.0;
};

struct KsnResult {
  SeedSet seeds;
  KsnReport report;
};

/// Runs the seeder for every (layer, budget) pair. The k*l runs are
/// independent; each uses rng seed derive_seed(cfg.rng_seed, i, j) and they
/// are spread over cfg.workers OpenMP threads. The result does not depend on
/// the worker count.
SeedingTable build_table(const Multiplex& m, std::size_t l, const KsnOptions& options,
                         const PropagationConfig& cfg);

/// Knapsack seeding: builds the table, solves the multiple-choice knapsack
/// with budget l and returns the union of the chosen per-layer seed sets.
KsnResult ksn_select(const Multiplex& m, std::size_t l, const KsnOptions& options,
                     const PropagationConfig& cfg);

}  // namespace mim

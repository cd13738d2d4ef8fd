#include "mim/ksn.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <exception>
#include <ctime>
#include <string>

#include "mim/error.hpp"

namespace mim {

std::string_view to_string(ProfitMode mode) {
  return mode == ProfitMode::multiplex ? "multiplex" : "per-layer";
}

ProfitMode parse_profit_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "multiplex") return ProfitMode::multiplex;
  if (lower == "per-layer" || lower == "per_layer" || lower == "layer") return ProfitMode::per_layer;
  throw InvalidInput("unknown profit mode '" + std::string(text) + "'");
}

SeedingTable build_table(const Multiplex& m, std::size_t l, const KsnOptions& options,
                         const PropagationConfig& cfg) {
  const std::size_t k = m.layer_count();
  std::vector<Multiplex> singles;
  singles.reserve(k);
  for (std::size_t i = 0; i < k; ++i) singles.push_back(m.single_layer(i));

  SeedingTable table;
  table.entries.assign(k, std::vector<TableEntry>(l + 1));

  const std::size_t tasks = k * l;
  std::vector<std::exception_ptr> errors(tasks);
  const int threads = static_cast<int>(resolve_workers(cfg.workers));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    const std::size_t i = static_cast<std::size_t>(t) / l;
    const std::size_t j = static_cast<std::size_t>(t) % l + 1;
    PropagationConfig task_cfg = cfg;
    task_cfg.rng_seed = derive_seed(cfg.rng_seed, i, j);
    task_cfg.workers = 1;
    try {
      LayerSeeding s = seed_layer(singles[i], j, task_cfg, options.seeder);
      TableEntry& e = table.entries[i][j];
      e.cost = s.seeds.size();
      e.profit = s.spread;
      e.seeds = std::move(s.seeds);
      if (options.profit_mode == ProfitMode::multiplex) {
        PropagationConfig eval_cfg = cfg;
        eval_cfg.rng_seed = derive_seed(cfg.rng_seed, 0xe7a1, 0);
        eval_cfg.workers = 1;
        e.profit = estimate_spread(m, e.seeds, eval_cfg, options.profit_estimator);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (std::size_t t = 0; t < tasks; ++t) {
    if (!errors[t]) continue;
    const std::string where = "KSN seeding failed at layer " + std::to_string(t / l) +
                              ", budget " + std::to_string(t % l + 1) + ": ";
    rethrow_with_context(errors[t], where);
  }
  return table;
}

KsnResult ksn_select(const Multiplex& m, std::size_t l, const KsnOptions& options,
                     const PropagationConfig& cfg) {
  const auto wall_start = std::chrono::steady_clock::now();
  const std::clock_t cpu_start = std::clock();

  KsnResult result;
  result.report.table = build_table(m, l, options, cfg);
  const auto table_done = std::chrono::steady_clock::now();

  MckpInstance inst;
  inst.budget = l;
  for (const auto& row : result.report.table.entries) {
    std::vector<MckpItem> items;
    for (std::size_t j = 0; j < row.size(); ++j) items.push_back({row[j].cost, row[j].profit, j});
    inst.classes.push_back(std::move(items));
  }
  const MckpSolution sol = solve_mckp(inst, options.solver);
  result.report.mckp_profit = sol.total_profit;
  for (std::size_t i = 0; i < inst.classes.size(); ++i) {
    const std::size_t j = inst.classes[i][sol.picks[i]].payload;
    result.report.budget_split.push_back(j);
    const SeedSet& s = result.report.table.entries[i][j].seeds;
    result.seeds.insert(result.seeds.end(), s.begin(), s.end());
  }
  normalize(result.seeds);

  const auto end = std::chrono::steady_clock::now();
  result.report.table_seconds = std::chrono::duration<double>(table_done - wall_start).count();
  result.report.solve_seconds = std::chrono::duration<double>(end - table_done).count();
  result.report.wall_seconds = std::chrono::duration<double>(end - wall_start).count();
  result.report.cpu_seconds = static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;
  return result;
}

}  // namespace mim

#include "mim/baselines.hpp"

#include <exception>
#include <string>

#include "mim/error.hpp"

namespace mim {

namespace {

std::vector<LayerSeeding> seed_layers(const Multiplex& m, const std::vector<std::size_t>& budgets,
                                      const SingleLayerSeeder& seeder,
                                      const PropagationConfig& cfg) {
  const std::size_t k = m.layer_count();
  std::vector<LayerSeeding> out(k);
  std::vector<std::exception_ptr> errors(k);
  const int threads = static_cast<int>(resolve_workers(cfg.workers));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(k); ++t) {
    const auto i = static_cast<std::size_t>(t);
    PropagationConfig task_cfg = cfg;
    task_cfg.rng_seed = derive_seed(cfg.rng_seed, i, budgets[i]);
    task_cfg.workers = 1;
    try {
      out[i] = seed_layer(m.single_layer(i), budgets[i], task_cfg, seeder);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (errors[i]) rethrow_with_context(errors[i], "baseline seeding failed at layer " + std::to_string(i) + ": ");
  }
  return out;
}

}  // namespace

std::vector<std::size_t> even_split(std::size_t l, std::size_t k) {
  std::vector<std::size_t> split(k, k == 0 ? 0 : l / k);
  for (std::size_t i = 0; i < k && i < l % k; ++i) ++split[i];
  return split;
}

BaselineResult even_seed(const Multiplex& m, std::size_t l, const SingleLayerSeeder& seeder,
                         const PropagationConfig& cfg) {
  BaselineResult r;
  r.budget_split = even_split(l, m.layer_count());
  const auto seeded = seed_layers(m, r.budget_split, seeder, cfg);
  for (const LayerSeeding& s : seeded) {
    r.seeds.insert(r.seeds.end(), s.seeds.begin(), s.seeds.end());
    r.layer_spreads.push_back(s.spread);
  }
  normalize(r.seeds);
  return r;
}

BaselineResult best_single_network(const Multiplex& m, std::size_t l,
                                   const SingleLayerSeeder& seeder, const PropagationConfig& cfg) {
  BaselineResult r;
  const auto seeded = seed_layers(m, std::vector<std::size_t>(m.layer_count(), l), seeder, cfg);
  std::size_t best = 0;
  for (std::size_t i = 0; i < seeded.size(); ++i) {
    r.layer_spreads.push_back(seeded[i].spread);
    if (seeded[i].spread > seeded[best].spread) best = i;
  }
  r.chosen_layer = best;
  r.budget_split.assign(m.layer_count(), 0);
  r.budget_split[best] = l;
  r.seeds = seeded[best].seeds;
  return r;
}

}  // namespace mim

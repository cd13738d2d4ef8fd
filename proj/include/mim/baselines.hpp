#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/multiplex.hpp"
#include "mim/single_layer.hpp"

namespace mim {

struct BaselineResult {
  SeedSet seeds;
  std::vector<std::size_t> budget_split;
  /// Per-layer spread estimate reported by the seeder.
  std::vector<double> layer_spreads;
  /// BSN only: the layer that received the whole budget.
  std::optional<std::size_t> chosen_layer;
};

/// Per-layer budgets for Even Seed: floor(l/k) each, remainder to the
/// lowest-index layers.
std::vector<std::size_t> even_split(std::size_t l, std::size_t k);

/// Even Seed: runs the seeder on every layer with its share of l and returns
/// the deduplicated union.
BaselineResult even_seed(const Multiplex& m, std::size_t l, const SingleLayerSeeder& seeder,
                         const PropagationConfig& cfg);

/// Best Single Network: seeds every layer with the whole budget and keeps
/// the layer whose single-layer spread is highest (ties to the lowest index).
BaselineResult best_single_network(const Multiplex& m, std::size_t l,
                                   const SingleLayerSeeder& seeder, const PropagationConfig& cfg);

}  // namespace mim

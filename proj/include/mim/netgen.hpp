#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "mim/multiplex.hpp"
#include "mim/rng.hpp"

namespace mim {

/// Directed graph over local node ids [0, n), before ids are made global.
struct LayerSkeleton {
  std::size_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// Barabasi-Albert preferential attachment: a clique on m+1 nodes, then each
/// new node links to m distinct existing nodes chosen proportionally to
/// degree. Every undirected edge is emitted in both directions.
LayerSkeleton gen_ba_layer(std::size_t n, std::size_t m_edges_per_node, Rng& rng);

/// G(n, p) with p = min(1, avg_degree / (n - 1)), both directions per edge.
LayerSkeleton gen_er_layer(std::size_t n, double avg_degree, Rng& rng);

/// Assigns global ids: `o` random tuples (one non-isolated node per layer)
/// become users 0..o-1, shared by every layer; remaining nodes get distinct
/// ids after that. Layers come out as IC with weight 1 until assign_models.
Multiplex wire_overlap(const std::vector<LayerSkeleton>& layers, std::size_t o, Rng& rng);

enum class WeightDistribution { uniform01, uniform_0_01, constant };

std::string_view to_string(WeightDistribution dist);
WeightDistribution parse_weight_distribution(std::string_view text);

struct WeightSpec {
  WeightDistribution dist = WeightDistribution::uniform01;
  double constant = 1.0;
};

/// Rebuilds `m` with layer i using model `kinds[i]`, edge weights drawn from
/// `weights` and (FixedThreshold) per-node thresholds drawn the same way.
/// LT normalization is applied by the rebuild.
Multiplex assign_models(const Multiplex& m, const std::vector<ModelKind>& kinds,
                        const WeightSpec& weights, Rng& rng);

}  // namespace mim

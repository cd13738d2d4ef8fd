#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mim/types.hpp"

namespace mim {

struct Edge {
  UserId source = 0;
  UserId target = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Activation rule of one layer. IC and LT read edge weights; MLT ignores
/// them; FixedThreshold compares the active in-weight against a per-node
/// threshold (`thresholds`, falling back to `default_threshold`).
struct DiffusionModelSpec {
  ModelKind kind = ModelKind::ic;
  std::map<UserId, double> thresholds;
  double default_threshold = 1.0;

  double threshold_of(UserId u) const;
};

struct Layer {
  std::size_t index = 0;
  std::vector<Edge> edges;
  DiffusionModelSpec model;
  /// Users present in the layer. Edge endpoints are added on build, so this
  /// only needs to list isolated users.
  std::vector<UserId> nodes;
};

/// Layer data re-indexed over the dense universe positions [0, N) of its
/// Multiplex. Arrays indexed by user are sized N.
struct CompiledLayer {
  ModelKind kind = ModelKind::ic;
  std::vector<std::uint32_t> out_offsets;
  std::vector<std::uint32_t> out_targets;
  std::vector<double> out_weights;
  std::vector<std::uint32_t> in_offsets;
  std::vector<std::uint32_t> in_sources;
  std::vector<double> in_weights;
  std::vector<std::uint8_t> present;
  std::vector<std::uint32_t> nodes;
  std::vector<double> thresholds;  // FixedThreshold only

  std::size_t edge_count() const { return out_targets.size(); }
  std::uint32_t in_degree(std::uint32_t v) const { return in_offsets[v + 1] - in_offsets[v]; }
  std::uint32_t out_degree(std::uint32_t u) const { return out_offsets[u + 1] - out_offsets[u]; }
};

/// Immutable set of layers over one user universe. A user that appears in
/// several layers is a single UserId; activation in one layer is seen by all.
class Multiplex {
 public:
  std::size_t layer_count() const { return layers_.size(); }
  const Layer& layer(std::size_t i) const;
  const CompiledLayer& compiled(std::size_t i) const;

  /// Sorted list of every user of every layer.
  const std::vector<UserId>& universe() const { return universe_; }
  std::size_t size() const { return universe_.size(); }

  /// Sorted users that are non-isolated in at least two layers.
  const std::vector<UserId>& overlap() const { return overlap_; }

  std::optional<std::uint32_t> find(UserId u) const;
  /// Dense position of `u`; throws InvalidInput if absent.
  std::uint32_t dense(UserId u) const;
  UserId user_at(std::uint32_t dense_index) const { return universe_[dense_index]; }
  bool in_layer(std::size_t i, UserId u) const;

  /// Dense positions of `seeds`, rejecting users outside the universe.
  std::vector<std::uint32_t> dense_seeds(std::span<const UserId> seeds) const;

  /// Standalone one-layer multiplex for layer i (its own universe).
  Multiplex single_layer(std::size_t i) const;

 private:
  friend Multiplex build_multiplex(std::vector<Layer> layers);

  std::vector<Layer> layers_;
  std::vector<CompiledLayer> compiled_;
  std::vector<UserId> universe_;
  std::unordered_map<UserId, std::uint32_t> index_;
  std::vector<UserId> overlap_;
};

/// Validates, normalizes and indexes `layers`. Layer indices must be exactly
/// 0..k-1 in any order; the result is ordered by index. LT layers whose
/// in-weights at a node sum above 1 are rescaled to sum to 1.
Multiplex build_multiplex(std::vector<Layer> layers);

std::size_t overlap_count(const Multiplex& m);

Layer restrict_to_layer(const Multiplex& m, std::size_t i);

/// Overlap recomputed from the layers, independent of the cached value.
std::vector<UserId> recompute_overlap(const Multiplex& m);

}  // namespace mim

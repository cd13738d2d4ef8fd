#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mim/multiplex.hpp"
#include "mim/rng.hpp"
#include "mim/types.hpp"

namespace mim {

struct PropagationConfig {
  /// Cap on propagation rounds. One round is a synchronous step in every
  /// layer followed by copying new activations across layers.
  std::optional<std::size_t> max_hops;
  std::uint64_t rng_seed = 1;
  std::size_t samples = 1000;
  /// OpenMP threads for sampling kernels; 0 means the OpenMP default.
  int workers = 0;
};

struct SpreadEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Spread plus, per layer, the mean number of activated users that are
/// members of that layer. An overlapping user counts once in `total` but in
/// every layer it belongs to.
struct SpreadBreakdown {
  SpreadEstimate total;
  std::vector<double> per_layer_means;
};

/// One deterministic instantiation of every stochastic layer. Vectors are
/// indexed by the compiled layout of the Multiplex they were made for:
/// `live` by out-edge CSR position (IC layers), `chosen` by dense target
/// holding the dense source of the single live in-edge, or `kNone` (LT layers).
struct WorldRealization {
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct LayerWorld {
    std::vector<std::uint8_t> live;
    std::vector<std::uint32_t> chosen;
  };

  std::vector<LayerWorld> layers;
  double probability = 1.0;
};

enum class Estimator { monte_carlo, exact };

/// Final active set of the fixpoint (or `cfg.max_hops` rounds) of the
/// multiplex cascade under world `w`. Sorted.
std::vector<UserId> propagate_deterministic(const Multiplex& m, const WorldRealization& w,
                                            std::span<const UserId> seeds,
                                            const PropagationConfig& cfg = {});

/// Same cascade confined to layer `layer` (no other layer participates).
std::vector<UserId> propagate_deterministic_layer(const Multiplex& m, const WorldRealization& w,
                                                  std::size_t layer, std::span<const UserId> seeds,
                                                  const PropagationConfig& cfg = {});

/// One sampled cascade drawing from `rng`. Sorted.
std::vector<UserId> simulate_once(const Multiplex& m, std::span<const UserId> seeds, Rng& rng,
                                  const PropagationConfig& cfg = {});

/// Monte Carlo spread. Sample s draws from make_stream(cfg.rng_seed, s) and
/// samples are reduced in index order, so the result does not depend on the
/// number of workers. Runs samples in parallel with OpenMP.
SpreadEstimate sigma_mc(const Multiplex& m, std::span<const UserId> seeds,
                        const PropagationConfig& cfg);

/// Single-threaded reference for sigma_mc; bit-identical output.
SpreadEstimate sigma_mc_serial(const Multiplex& m, std::span<const UserId> seeds,
                               const PropagationConfig& cfg);

SpreadBreakdown sigma_mc_breakdown(const Multiplex& m, std::span<const UserId> seeds,
                                   const PropagationConfig& cfg);

/// Spread with propagation confined to layer `layer`. Seeds that are not
/// members of the layer are dropped.
SpreadEstimate sigma_layer(const Multiplex& m, std::size_t layer, std::span<const UserId> seeds,
                           const PropagationConfig& cfg);

/// Dispatches to sigma_mc or sigma_exact (the latter honours cfg.max_hops).
double estimate_spread(const Multiplex& m, std::span<const UserId> seeds,
                       const PropagationConfig& cfg, Estimator estimator);

std::size_t resolve_workers(int workers);

}  // namespace mim

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/multiplex.hpp"
#include "mim/types.hpp"

namespace mim {

enum class SeederKind {
  greedy_celf,  ///< lazy greedy with the configured estimator
  ris,          ///< reverse-reachable-set sampling + greedy max coverage
  exhaustive,   ///< best j-subset by enumeration; tiny layers only
};

std::string_view to_string(SeederKind kind);
SeederKind parse_seeder_kind(std::string_view text);

/// Single-layer influence maximization algorithm used inside KSN, ES and BSN.
struct SingleLayerSeeder {
  SeederKind kind = SeederKind::greedy_celf;
  /// Spread estimator for greedy_celf and exhaustive.
  Estimator estimator = Estimator::monte_carlo;
  /// Number of RR sets for ris.
  std::size_t rr_sets = 10000;

  /// Nominal approximation ratio of the method.
  double alpha() const;
};

struct LayerSeeding {
  SeedSet seeds;
  double spread = 0.0;
};

/// Seeds a one-layer multiplex with min(j, |nodes|) users. j = 0 gives (∅, 0).
LayerSeeding seed_layer(const Multiplex& single, std::size_t j, const PropagationConfig& cfg,
                        const SingleLayerSeeder& seeder);

LayerSeeding seed_layer(const Layer& layer, std::size_t j, const PropagationConfig& cfg,
                        const SingleLayerSeeder& seeder);

/// Flat storage for a collection of reverse-reachable sets (dense ids).
struct RrCollection {
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> members;

  std::size_t size() const { return offsets.size() - 1; }
};

/// `count` RR sets from uniform roots. Set r uses make_stream(cfg.rng_seed, r),
/// so the result is independent of the worker count. OpenMP-parallel.
RrCollection generate_rr_sets(const Multiplex& single, std::size_t count,
                              const PropagationConfig& cfg);

/// Single-threaded reference for generate_rr_sets; identical output.
RrCollection generate_rr_sets_serial(const Multiplex& single, std::size_t count,
                                     const PropagationConfig& cfg);

/// Greedy maximum coverage of `rr` with j users (ties to lowest id). Spread is
/// |nodes| times the covered fraction.
LayerSeeding max_coverage(const Multiplex& single, const RrCollection& rr, std::size_t j);

/// RIS seeding of an IC or LT layer with a fixed number of RR sets.
LayerSeeding ris_seed_layer(const Multiplex& single, std::size_t j, const PropagationConfig& cfg,
                            std::size_t rr_sets);

}  // namespace mim

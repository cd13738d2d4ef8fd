#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/multiplex.hpp"

namespace mim {

/// One independent random choice of a stochastic layer: an IC edge that is
/// live or blocked, or an LT node picking one in-edge (or none).
struct RandomDimension {
  std::size_t layer = 0;
  bool is_edge = false;
  /// CSR out-edge position (IC) or dense node (LT).
  std::uint32_t item = 0;
  /// (value, probability). IC values are 0/1; LT values are dense sources
  /// or WorldRealization::kNone.
  std::vector<std::pair<std::uint32_t, double>> options;
};

struct RealizationSpace {
  /// World holding every non-random choice; dimensions overwrite their slots.
  WorldRealization base;
  std::vector<RandomDimension> dims;
  /// Number of worlds (product of option counts), as a double to avoid overflow.
  double world_count = 1.0;
};

inline constexpr std::size_t kMaxRandomDimensions = 20;
inline constexpr double kMaxWorlds = 4194304.0;  // 2^22

RealizationSpace realization_space(const Multiplex& m);

/// Calls `fn` once per world with non-zero probability. Throws TooLarge when
/// the space has more than kMaxRandomDimensions dimensions or kMaxWorlds worlds.
void for_each_realization(const Multiplex& m,
                          const std::function<void(const WorldRealization&)>& fn);

/// Exact expected number of distinct activated users.
double sigma_exact(const Multiplex& m, std::span<const UserId> seeds,
                   std::optional<std::size_t> max_hops = std::nullopt);

/// Exact spread confined to one layer.
double sigma_exact_layer(const Multiplex& m, std::size_t layer, std::span<const UserId> seeds,
                         std::optional<std::size_t> max_hops = std::nullopt);

}  // namespace mim

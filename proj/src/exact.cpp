#include "mim/exact.hpp"

#include <string>

#include "mim/error.hpp"

namespace mim {

RealizationSpace realization_space(const Multiplex& m) {
  RealizationSpace space;
  space.base.layers.resize(m.layer_count());
  for (std::size_t li = 0; li < m.layer_count(); ++li) {
    const CompiledLayer& c = m.compiled(li);
    auto& world = space.base.layers[li];
    if (c.kind == ModelKind::ic) {
      world.live.assign(c.edge_count(), 0);
      for (std::uint32_t p = 0; p < c.edge_count(); ++p) {
        const double w = c.out_weights[p];
        if (w >= 1.0) {
          world.live[p] = 1;
        } else if (w > 0.0) {
          space.dims.push_back({li, true, p, {{0u, 1.0 - w}, {1u, w}}});
        }
      }
    } else if (c.kind == ModelKind::lt) {
      world.chosen.assign(m.size(), WorldRealization::kNone);
      for (std::uint32_t v = 0; v < m.size(); ++v) {
        RandomDimension dim{li, false, v, {}};
        double total = 0.0;
        for (std::uint32_t p = c.in_offsets[v]; p < c.in_offsets[v + 1]; ++p) {
          const double w = c.in_weights[p];
          if (w > 0.0) dim.options.emplace_back(c.in_sources[p], w);
          total += w;
        }
        const double none = 1.0 - total;
        if (none > 1e-12) dim.options.emplace_back(WorldRealization::kNone, none);
        if (dim.options.size() == 1) {
          world.chosen[v] = dim.options.front().first;
        } else if (dim.options.size() > 1) {
          space.dims.push_back(std::move(dim));
        }
      }
    }
  }
  for (const auto& d : space.dims) space.world_count *= static_cast<double>(d.options.size());
  return space;
}

void for_each_realization(const Multiplex& m,
                          const std::function<void(const WorldRealization&)>& fn) {
  RealizationSpace space = realization_space(m);
  if (space.dims.size() > kMaxRandomDimensions || space.world_count > kMaxWorlds) {
    throw TooLarge("exact enumeration refused: " + std::to_string(space.dims.size()) +
                   " random dimensions (" + std::to_string(space.world_count) +
                   " worlds); limit is " + std::to_string(kMaxRandomDimensions) +
                   " dimensions and " + std::to_string(static_cast<long long>(kMaxWorlds)) +
                   " worlds");
  }

  WorldRealization world = space.base;
  std::vector<std::size_t> digit(space.dims.size(), 0);
  auto apply = [&](std::size_t d) {
    const RandomDimension& dim = space.dims[d];
    const std::uint32_t value = dim.options[digit[d]].first;
    if (dim.is_edge) {
      world.layers[dim.layer].live[dim.item] = static_cast<std::uint8_t>(value);
    } else {
      world.layers[dim.layer].chosen[dim.item] = value;
    }
  };
  for (std::size_t d = 0; d < digit.size(); ++d) apply(d);

  while (true) {
    double p = 1.0;
    for (std::size_t d = 0; d < digit.size(); ++d) p *= space.dims[d].options[digit[d]].second;
    world.probability = p;
    fn(world);

    std::size_t d = 0;
    while (d < digit.size()) {
      if (++digit[d] < space.dims[d].options.size()) {
        apply(d);
        break;
      }
      digit[d] = 0;
      apply(d);
      ++d;
    }
    if (d == digit.size()) break;
  }
}

double sigma_exact(const Multiplex& m, std::span<const UserId> seeds,
                   std::optional<std::size_t> max_hops) {
  PropagationConfig cfg;
  cfg.max_hops = max_hops;
  double sigma = 0.0;
  for_each_realization(m, [&](const WorldRealization& w) {
    sigma += w.probability * static_cast<double>(propagate_deterministic(m, w, seeds, cfg).size());
  });
  return sigma;
}

double sigma_exact_layer(const Multiplex& m, std::size_t layer, std::span<const UserId> seeds,
                         std::optional<std::size_t> max_hops) {
  PropagationConfig cfg;
  cfg.max_hops = max_hops;
  double sigma = 0.0;
  for_each_realization(m, [&](const WorldRealization& w) {
    sigma += w.probability *
             static_cast<double>(propagate_deterministic_layer(m, w, layer, seeds, cfg).size());
  });
  return sigma;
}

}  // namespace mim

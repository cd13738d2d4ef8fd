#include "mim/netgen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "mim/error.hpp"

namespace mim {

LayerSkeleton gen_ba_layer(std::size_t n, std::size_t m_edges_per_node, Rng& rng) {
  if (m_edges_per_node < 1 || n <= m_edges_per_node) {
    throw InvalidInput("BA generator needs n > m >= 1 (n=" + std::to_string(n) +
                       ", m=" + std::to_string(m_edges_per_node) + ")");
  }
  const std::size_t m = m_edges_per_node;
  LayerSkeleton g;
  g.n = n;
  // Every endpoint occurrence once, so uniform picks are degree-proportional.
  std::vector<std::uint32_t> endpoints;
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    g.edges.emplace_back(a, b);
    g.edges.emplace_back(b, a);
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  for (std::uint32_t a = 0; a <= m; ++a) {
    for (std::uint32_t b = a + 1; b <= m; ++b) link(a, b);
  }
  std::vector<std::uint32_t> targets;
  for (std::size_t v = m + 1; v < n; ++v) {
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (targets.size() < m) {
      const std::uint32_t t = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (std::uint32_t t : targets) link(static_cast<std::uint32_t>(v), t);
  }
  return g;
}

LayerSkeleton gen_er_layer(std::size_t n, double avg_degree, Rng& rng) {
  if (n < 2) throw InvalidInput("ER generator needs n >= 2");
  if (!(avg_degree >= 0.0)) throw InvalidInput("ER average degree must be >= 0");
  LayerSkeleton g;
  g.n = n;
  const double p = std::min(1.0, avg_degree / static_cast<double>(n - 1));
  if (p <= 0.0) return g;
  // Walk the pairs (a < b) in row-major order with geometric skips.
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t pos = 0;
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t a = 0;
  std::uint64_t row_start = 0;  // pair index of (a, a+1)
  while (true) {
    if (p < 1.0) pos += skip(rng);
    if (pos >= total) break;
    while (pos >= row_start + (n - 1 - a)) {
      row_start += n - 1 - a;
      ++a;
    }
    const std::uint64_t b = a + 1 + (pos - row_start);
    g.edges.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
    g.edges.emplace_back(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(a));
    ++pos;
  }
  return g;
}

Multiplex wire_overlap(const std::vector<LayerSkeleton>& layers, std::size_t o, Rng& rng) {
  if (layers.empty()) throw InvalidInput("wire_overlap needs at least one layer");
  std::vector<std::vector<UserId>> global(layers.size());
  std::vector<std::vector<std::uint32_t>> shared(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::vector<std::uint8_t> touched(layers[i].n, 0);
    for (const auto& [a, b] : layers[i].edges) {
      if (a >= layers[i].n || b >= layers[i].n) {
        throw InvalidInput("skeleton edge endpoint out of range in layer " + std::to_string(i));
      }
      touched[a] = touched[b] = 1;
    }
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t v = 0; v < layers[i].n; ++v) {
      if (touched[v]) candidates.push_back(v);
    }
    if (o > candidates.size()) {
      throw InvalidInput("overlap " + std::to_string(o) + " exceeds the " +
                         std::to_string(candidates.size()) + " non-isolated nodes of layer " +
                         std::to_string(i));
    }
    // Partial Fisher-Yates: the first o candidates become the shared slots.
    for (std::size_t t = 0; t < o; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, candidates.size() - 1);
      std::swap(candidates[t], candidates[pick(rng)]);
    }
    shared[i].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(o));
    global[i].assign(layers[i].n, 0);
  }

  UserId next = static_cast<UserId>(o);
  std::vector<Layer> out(layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::vector<std::uint8_t> is_shared(layers[i].n, 0);
    for (std::size_t t = 0; t < o; ++t) {
      global[i][shared[i][t]] = static_cast<UserId>(t);
      is_shared[shared[i][t]] = 1;
    }
    for (std::uint32_t v = 0; v < layers[i].n; ++v) {
      if (!is_shared[v]) global[i][v] = next++;
    }
    out[i].index = i;
    out[i].model.kind = ModelKind::ic;
    out[i].nodes = global[i];
    for (const auto& [a, b] : layers[i].edges) out[i].edges.push_back({global[i][a], global[i][b], 1.0});
  }
  return build_multiplex(std::move(out));
}

std::string_view to_string(WeightDistribution dist) {
  switch (dist) {
    case WeightDistribution::uniform01: return "uniform01";
    case WeightDistribution::uniform_0_01: return "uniform0.1";
    case WeightDistribution::constant: return "constant";
  }
  return "?";
}

WeightDistribution parse_weight_distribution(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "uniform01" || lower == "uniform") return WeightDistribution::uniform01;
  if (lower == "uniform0.1" || lower == "uniform001" || lower == "small") {
    return WeightDistribution::uniform_0_01;
  }
  if (lower == "constant") return WeightDistribution::constant;
  throw InvalidInput("unknown weight distribution '" + std::string(text) + "'");
}

namespace {

double draw(const WeightSpec& ws, Rng& rng) {
  switch (ws.dist) {
    case WeightDistribution::uniform01: return uniform01(rng);
    case WeightDistribution::uniform_0_01: {
      // open interval (0, 0.1)
      double w = 0.0;
      while (w == 0.0) w = 0.1 * uniform01(rng);
      return w;
    }
    case WeightDistribution::constant: return ws.constant;
  }
  return 0.0;
}

}  // namespace

Multiplex assign_models(const Multiplex& m, const std::vector<ModelKind>& kinds,
                        const WeightSpec& weights, Rng& rng) {
  if (kinds.size() != m.layer_count()) {
    throw InvalidInput("assign_models got " + std::to_string(kinds.size()) + " models for " +
                       std::to_string(m.layer_count()) + " layers");
  }
  std::vector<Layer> layers;
  for (std::size_t i = 0; i < m.layer_count(); ++i) {
    Layer layer = m.layer(i);
    layer.model = DiffusionModelSpec{};
    layer.model.kind = kinds[i];
    for (Edge& e : layer.edges) e.weight = draw(weights, rng);
    if (kinds[i] == ModelKind::fixed_threshold) {
      for (UserId u : layer.nodes) layer.model.thresholds[u] = draw(weights, rng);
    }
    layers.push_back(std::move(layer));
  }
  return build_multiplex(std::move(layers));
}

}  // namespace mim

#include "mim/single_layer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mim/error.hpp"
#include "mim/isf.hpp"

namespace mim {

std::string_view to_string(SeederKind kind) {
  switch (kind) {
    case SeederKind::greedy_celf: return "greedy-celf";
    case SeederKind::ris: return "ris";
    case SeederKind::exhaustive: return "exhaustive";
  }
  return "?";
}

SeederKind parse_seeder_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "greedy-celf" || lower == "greedy_celf" || lower == "celf" || lower == "greedy") return SeederKind::greedy_celf;
  if (lower == "ris") return SeederKind::ris;
  if (lower == "exhaustive" || lower == "brute-force" || lower == "brute_force") return SeederKind::exhaustive;
  throw InvalidInput("unknown seeder '" + std::string(text) + "'");
}

double SingleLayerSeeder::alpha() const {
  switch (kind) {
    case SeederKind::exhaustive: return 1.0;
    case SeederKind::greedy_celf:
    case SeederKind::ris: return 1.0 - 1.0 / std::exp(1.0);
  }
  return 0.0;
}

namespace {

void require_single(const Multiplex& m) {
  if (m.layer_count() != 1) {
    throw InvalidInput("single-layer seeding needs a one-layer multiplex, got " +
                       std::to_string(m.layer_count()) + " layers");
  }
}

LayerSeeding all_nodes(const Multiplex& single) {
  return {single.universe(), static_cast<double>(single.size())};
}

LayerSeeding exhaustive_seed(const Multiplex& single, std::size_t j, const PropagationConfig& cfg,
                             Estimator estimator) {
  const std::size_t n = single.size();
  double combos = 1.0;
  for (std::size_t t = 0; t < j; ++t) combos = combos * static_cast<double>(n - t) / static_cast<double>(t + 1);
  if (combos > 200000.0) {
    throw TooLarge("exhaustive seeding refused: " + std::to_string(combos) + " subsets");
  }
  std::vector<std::size_t> pick(j);
  for (std::size_t t = 0; t < j; ++t) pick[t] = t;
  LayerSeeding best;
  best.spread = -1.0;
  std::vector<UserId> seeds(j);
  while (true) {
    for (std::size_t t = 0; t < j; ++t) seeds[t] = single.user_at(static_cast<std::uint32_t>(pick[t]));
    const double s = estimate_spread(single, seeds, cfg, estimator);
    if (s > best.spread) best = {seeds, s};
    // next combination in lexicographic order
    std::size_t t = j;
    while (t > 0 && pick[t - 1] == n - j + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t u = t; u < j; ++u) pick[u] = pick[u - 1] + 1;
  }
  return best;
}

void reverse_sample(const CompiledLayer& layer, std::uint32_t root,
                    std::optional<std::size_t> max_hops, Rng& rng,
                    std::vector<std::uint32_t>& visited_stamp, std::uint32_t stamp,
                    std::vector<std::uint32_t>& out) {
  out.clear();
  out.push_back(root);
  visited_stamp[root] = stamp;
  if (layer.kind == ModelKind::ic) {
    std::size_t level_begin = 0;
    std::size_t depth = 0;
    while (level_begin < out.size() && (!max_hops || depth < *max_hops)) {
      const std::size_t level_end = out.size();
      for (std::size_t q = level_begin; q < level_end; ++q) {
        const std::uint32_t x = out[q];
        for (std::uint32_t p = layer.in_offsets[x]; p < layer.in_offsets[x + 1]; ++p) {
          const std::uint32_t y = layer.in_sources[p];
          if (visited_stamp[y] == stamp) continue;
          if (uniform01(rng) < layer.in_weights[p]) {
            visited_stamp[y] = stamp;
            out.push_back(y);
          }
        }
      }
      level_begin = level_end;
      ++depth;
    }
  } else {
    std::uint32_t x = root;
    std::size_t depth = 0;
    while (!max_hops || depth < *max_hops) {
      const double r = uniform01(rng);
      double cumulative = 0.0;
      std::uint32_t next = WorldRealization::kNone;
      for (std::uint32_t p = layer.in_offsets[x]; p < layer.in_offsets[x + 1]; ++p) {
        cumulative += layer.in_weights[p];
        if (r < cumulative) {
          next = layer.in_sources[p];
          break;
        }
      }
      if (next == WorldRealization::kNone || visited_stamp[next] == stamp) break;
      visited_stamp[next] = stamp;
      out.push_back(next);
      x = next;
      ++depth;
    }
  }
}

RrCollection generate(const Multiplex& single, std::size_t count, const PropagationConfig& cfg,
                      bool parallel) {
  require_single(single);
  const CompiledLayer& layer = single.compiled(0);
  if (layer.kind != ModelKind::ic && layer.kind != ModelKind::lt) {
    throw UnsupportedModel("RIS needs an IC or LT layer, got " + std::string(to_string(layer.kind)));
  }
  std::vector<std::vector<std::uint32_t>> sets(count);
  if (layer.nodes.empty()) count = 0;

  auto body = [&](std::vector<std::uint32_t>& stamp, std::uint32_t tag, std::size_t r) {
    Rng rng = make_stream(cfg.rng_seed, r);
    std::uniform_int_distribution<std::size_t> pick(0, layer.nodes.size() - 1);
    const std::uint32_t root = layer.nodes[pick(rng)];
    reverse_sample(layer, root, cfg.max_hops, rng, stamp, tag, sets[r]);
  };

  const int threads = static_cast<int>(resolve_workers(cfg.workers));
  if (!parallel || threads <= 1) {
    std::vector<std::uint32_t> stamp(single.size(), 0);
    for (std::size_t r = 0; r < count; ++r) body(stamp, static_cast<std::uint32_t>(r + 1), r);
  } else {
#pragma omp parallel num_threads(threads)
    {
      std::vector<std::uint32_t> stamp(single.size(), 0);
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
        body(stamp, static_cast<std::uint32_t>(r + 1), static_cast<std::size_t>(r));
      }
    }
  }

  RrCollection rr;
  rr.offsets.reserve(count + 1);
  for (std::size_t r = 0; r < count; ++r) {
    rr.members.insert(rr.members.end(), sets[r].begin(), sets[r].end());
    rr.offsets.push_back(rr.members.size());
  }
  return rr;
}

}  // namespace

RrCollection generate_rr_sets(const Multiplex& single, std::size_t count,
                              const PropagationConfig& cfg) {
  return generate(single, count, cfg, true);
}

RrCollection generate_rr_sets_serial(const Multiplex& single, std::size_t count,
                                     const PropagationConfig& cfg) {
  return generate(single, count, cfg, false);
}

LayerSeeding max_coverage(const Multiplex& single, const RrCollection& rr, std::size_t j) {
  require_single(single);
  const std::size_t n = single.size();
  const std::size_t target = std::min(j, n);
  LayerSeeding out;
  if (target == 0) return out;
  if (rr.size() == 0) {
    for (std::size_t t = 0; t < target; ++t) out.seeds.push_back(single.user_at(static_cast<std::uint32_t>(t)));
    return out;
  }

  std::vector<std::uint64_t> node_offsets(n + 1, 0);
  for (std::uint32_t v : rr.members) ++node_offsets[v + 1];
  for (std::size_t v = 0; v < n; ++v) node_offsets[v + 1] += node_offsets[v];
  std::vector<std::uint32_t> node_sets(rr.members.size());
  {
    std::vector<std::uint64_t> cursor(node_offsets.begin(), node_offsets.end() - 1);
    for (std::size_t r = 0; r < rr.size(); ++r) {
      for (std::uint64_t q = rr.offsets[r]; q < rr.offsets[r + 1]; ++q) {
        node_sets[cursor[rr.members[q]]++] = static_cast<std::uint32_t>(r);
      }
    }
  }
  std::vector<std::uint64_t> gain(n);
  for (std::size_t v = 0; v < n; ++v) gain[v] = node_offsets[v + 1] - node_offsets[v];
  std::vector<std::uint8_t> covered(rr.size(), 0);
  std::vector<std::uint8_t> taken(n, 0);
  std::size_t covered_count = 0;

  for (std::size_t t = 0; t < target; ++t) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!taken[v] && (best == n || gain[v] > gain[best])) best = v;
    }
    taken[best] = 1;
    out.seeds.push_back(single.user_at(static_cast<std::uint32_t>(best)));
    for (std::uint64_t q = node_offsets[best]; q < node_offsets[best + 1]; ++q) {
      const std::uint32_t r = node_sets[q];
      if (covered[r]) continue;
      covered[r] = 1;
      ++covered_count;
      for (std::uint64_t z = rr.offsets[r]; z < rr.offsets[r + 1]; ++z) --gain[rr.members[z]];
    }
  }
  normalize(out.seeds);
  out.spread = static_cast<double>(single.compiled(0).nodes.size()) *
               static_cast<double>(covered_count) / static_cast<double>(rr.size());
  return out;
}

LayerSeeding ris_seed_layer(const Multiplex& single, std::size_t j, const PropagationConfig& cfg,
                            std::size_t rr_sets) {
  require_single(single);
  if (rr_sets == 0) throw InvalidInput("RIS needs at least one RR set");
  const CompiledLayer& layer = single.compiled(0);
  if (layer.kind != ModelKind::ic && layer.kind != ModelKind::lt) {
    throw UnsupportedModel("RIS needs an IC or LT layer, got " + std::string(to_string(layer.kind)));
  }
  if (j == 0) return {};
  if (j >= single.size()) return all_nodes(single);
  return max_coverage(single, generate_rr_sets(single, rr_sets, cfg), j);
}

LayerSeeding seed_layer(const Multiplex& single, std::size_t j, const PropagationConfig& cfg,
                        const SingleLayerSeeder& seeder) {
  require_single(single);
  if (seeder.kind == SeederKind::ris) return ris_seed_layer(single, j, cfg, seeder.rr_sets);
  if (j == 0) return {};
  switch (seeder.kind) {
    case SeederKind::ris: break;
    case SeederKind::exhaustive:
      if (j >= single.size()) return all_nodes(single);
      return exhaustive_seed(single, j, cfg, seeder.estimator);
    case SeederKind::greedy_celf: {
      if (j >= single.size()) return all_nodes(single);
      GreedyResult g = isf_select(single, j, cfg, seeder.estimator);
      return {std::move(g.seeds), g.trace.empty() ? 0.0 : g.trace.back().sigma};
    }
  }
  return {};
}

LayerSeeding seed_layer(const Layer& layer, std::size_t j, const PropagationConfig& cfg,
                        const SingleLayerSeeder& seeder) {
  Layer copy = layer;
  copy.index = 0;
  return seed_layer(build_multiplex({std::move(copy)}), j, cfg, seeder);
}

}  // namespace mim

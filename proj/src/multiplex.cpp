#include "mim/multiplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "mim/error.hpp"

namespace mim {

double DiffusionModelSpec::threshold_of(UserId u) const {
  auto it = thresholds.find(u);
  return it == thresholds.end() ? default_threshold : it->second;
}

const Layer& Multiplex::layer(std::size_t i) const {
  if (i >= layers_.size()) {
    throw InvalidInput("layer index " + std::to_string(i) + " out of range (k=" +
                       std::to_string(layers_.size()) + ")");
  }
  return layers_[i];
}

const CompiledLayer& Multiplex::compiled(std::size_t i) const {
  if (i >= compiled_.size()) {
    throw InvalidInput("layer index " + std::to_string(i) + " out of range (k=" +
                       std::to_string(compiled_.size()) + ")");
  }
  return compiled_[i];
}

std::optional<std::uint32_t> Multiplex::find(UserId u) const {
  auto it = index_.find(u);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Multiplex::dense(UserId u) const {
  auto d = find(u);
  if (!d) throw InvalidInput("user " + std::to_string(u) + " is not in the multiplex");
  return *d;
}

bool Multiplex::in_layer(std::size_t i, UserId u) const {
  auto d = find(u);
  return d && compiled(i).present[*d] != 0;
}

std::vector<std::uint32_t> Multiplex::dense_seeds(std::span<const UserId> seeds) const {
  std::vector<std::uint32_t> out;
  out.reserve(seeds.size());
  for (UserId u : seeds) out.push_back(dense(u));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Multiplex Multiplex::single_layer(std::size_t i) const {
  Layer copy = layer(i);
  copy.index = 0;
  return build_multiplex({std::move(copy)});
}

namespace {

std::string edge_name(const Layer& layer, const Edge& e) {
  return "layer " + std::to_string(layer.index) + " edge " + std::to_string(e.source) +
         "->" + std::to_string(e.target);
}

void validate_and_normalize(Layer& layer) {
  std::set<std::pair<UserId, UserId>> seen;
  for (const Edge& e : layer.edges) {
    if (e.source == e.target) throw InvalidInput("self-loop at " + edge_name(layer, e));
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      throw InvalidInput("weight " + std::to_string(e.weight) + " outside [0,1] at " +
                         edge_name(layer, e));
    }
    if (!seen.emplace(e.source, e.target).second) {
      throw InvalidInput("duplicate directed " + edge_name(layer, e));
    }
  }
  for (const auto& [u, theta] : layer.model.thresholds) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
      throw InvalidInput("negative threshold for user " + std::to_string(u) + " in layer " +
                         std::to_string(layer.index));
    }
  }
  if (!(layer.model.default_threshold >= 0.0) || !std::isfinite(layer.model.default_threshold)) {
    throw InvalidInput("negative default threshold in layer " + std::to_string(layer.index));
  }

  for (const Edge& e : layer.edges) {
    layer.nodes.push_back(e.source);
    layer.nodes.push_back(e.target);
  }
  std::sort(layer.nodes.begin(), layer.nodes.end());
  layer.nodes.erase(std::unique(layer.nodes.begin(), layer.nodes.end()), layer.nodes.end());

  if (layer.model.kind == ModelKind::lt) {
    std::unordered_map<UserId, double> in_sum;
    for (const Edge& e : layer.edges) in_sum[e.target] += e.weight;
    for (Edge& e : layer.edges) {
      double s = in_sum[e.target];
      if (s > 1.0 + 1e-9) e.weight /= s;  // slack keeps rebuilds idempotent
    }
  }
}

CompiledLayer compile(const Layer& layer, const std::unordered_map<UserId, std::uint32_t>& index,
                      std::size_t n) {
  CompiledLayer c;
  c.kind = layer.model.kind;
  c.present.assign(n, 0);
  for (UserId u : layer.nodes) {
    std::uint32_t d = index.at(u);
    c.present[d] = 1;
    c.nodes.push_back(d);
  }
  std::sort(c.nodes.begin(), c.nodes.end());

  auto fill_csr = [&](bool outgoing, std::vector<std::uint32_t>& offsets,
                      std::vector<std::uint32_t>& adj, std::vector<double>& weights) {
    offsets.assign(n + 1, 0);
    for (const Edge& e : layer.edges) {
      ++offsets[index.at(outgoing ? e.source : e.target) + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    adj.assign(layer.edges.size(), 0);
    weights.assign(layer.edges.size(), 0.0);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : layer.edges) {
      std::uint32_t from = index.at(outgoing ? e.source : e.target);
      std::uint32_t to = index.at(outgoing ? e.target : e.source);
      std::uint32_t pos = cursor[from]++;
      adj[pos] = to;
      weights[pos] = e.weight;
    }
    // Sort each adjacency run by neighbour so the layout is independent of edge order.
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<std::pair<std::uint32_t, double>> run;
      for (std::uint32_t p = offsets[u]; p < offsets[u + 1]; ++p) run.emplace_back(adj[p], weights[p]);
      std::sort(run.begin(), run.end());
      for (std::uint32_t p = offsets[u], q = 0; p < offsets[u + 1]; ++p, ++q) {
        adj[p] = run[q].first;
        weights[p] = run[q].second;
      }
    }
  };
  fill_csr(true, c.out_offsets, c.out_targets, c.out_weights);
  fill_csr(false, c.in_offsets, c.in_sources, c.in_weights);

  if (c.kind == ModelKind::fixed_threshold) {
    c.thresholds.assign(n, layer.model.default_threshold);
    for (UserId u : layer.nodes) c.thresholds[index.at(u)] = layer.model.threshold_of(u);
  }
  return c;
}

std::vector<UserId> overlap_of(const std::vector<Layer>& layers) {
  std::unordered_map<UserId, std::size_t> count;
  for (const Layer& layer : layers) {
    std::set<UserId> active;
    for (const Edge& e : layer.edges) {
      active.insert(e.source);
      active.insert(e.target);
    }
    for (UserId u : active) ++count[u];
  }
  std::vector<UserId> out;
  for (const auto& [u, c] : count) {
    if (c >= 2) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Multiplex build_multiplex(std::vector<Layer> layers) {
  if (layers.empty()) throw InvalidInput("a multiplex needs at least one layer");
  std::sort(layers.begin(), layers.end(),
            [](const Layer& a, const Layer& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (i > 0 && layers[i].index == layers[i - 1].index) {
      throw InvalidInput("duplicate layer index " + std::to_string(layers[i].index));
    }
    if (layers[i].index != i) {
      throw InvalidInput("layer indices must be 0..k-1; missing index " + std::to_string(i));
    }
  }

  Multiplex m;
  for (Layer& layer : layers) validate_and_normalize(layer);

  for (const Layer& layer : layers) {
    m.universe_.insert(m.universe_.end(), layer.nodes.begin(), layer.nodes.end());
  }
  std::sort(m.universe_.begin(), m.universe_.end());
  m.universe_.erase(std::unique(m.universe_.begin(), m.universe_.end()), m.universe_.end());
  m.index_.reserve(m.universe_.size());
  for (std::uint32_t d = 0; d < m.universe_.size(); ++d) m.index_.emplace(m.universe_[d], d);

  for (const Layer& layer : layers) m.compiled_.push_back(compile(layer, m.index_, m.universe_.size()));
  m.overlap_ = overlap_of(layers);
  m.layers_ = std::move(layers);
  return m;
}

std::size_t overlap_count(const Multiplex& m) { return m.overlap().size(); }

Layer restrict_to_layer(const Multiplex& m, std::size_t i) { return m.layer(i); }

std::vector<UserId> recompute_overlap(const Multiplex& m) {
  std::vector<UserId> out;
  for (std::uint32_t d = 0; d < m.size(); ++d) {
    std::size_t layers_with_edges = 0;
    for (std::size_t i = 0; i < m.layer_count(); ++i) {
      const CompiledLayer& c = m.compiled(i);
      if (c.out_degree(d) + c.in_degree(d) > 0) ++layers_with_edges;
    }
    if (layers_with_edges >= 2) out.push_back(m.user_at(d));
  }
  return out;
}

}  // namespace mim

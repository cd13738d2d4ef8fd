#include "mim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "mim/error.hpp"
#include "mim/exact.hpp"

namespace mim {

namespace {

/// Reusable cascade workspace. Per-user state is epoch-stamped so a run
/// costs time proportional to the users it touches, not to N.
class Cascade {
 public:
  explicit Cascade(const Multiplex& m)
      : m_(m), active_(m.size(), 0), layers_(m.layer_count()) {
    for (auto& st : layers_) {
      st.stamp.assign(m.size(), 0);
      st.acc.assign(m.size(), 0.0);
      st.theta.assign(m.size(), 0.0);
      st.count.assign(m.size(), 0);
    }
  }

  /// Runs one cascade. Exactly one of `rng` / `world` is non-null.
  const std::vector<std::uint32_t>& run(std::span<const std::uint32_t> seeds,
                                        std::optional<std::size_t> max_hops,
                                        std::optional<std::size_t> only_layer, Rng* rng,
                                        const WorldRealization* world) {
    next_epoch();
    activated_.clear();
    frontier_.clear();
    for (std::uint32_t s : seeds) activate(s, frontier_);

    std::size_t hops = 0;
    while (!frontier_.empty() && (!max_hops || hops < *max_hops)) {
      next_.clear();
      for (std::size_t li = 0; li < m_.layer_count(); ++li) {
        if (only_layer && li != *only_layer) continue;
        step_layer(li, rng, world);
      }
      std::swap(frontier_, next_);
      ++hops;
    }
    return activated_;
  }

 private:
  struct LayerState {
    std::vector<std::uint32_t> stamp;
    std::vector<double> acc;
    std::vector<double> theta;
    std::vector<std::uint32_t> count;
  };

  void next_epoch() {
    if (++epoch_ == 0) {
      std::fill(active_.begin(), active_.end(), 0);
      for (auto& st : layers_) std::fill(st.stamp.begin(), st.stamp.end(), 0);
      epoch_ = 1;
    }
  }

  bool is_active(std::uint32_t v) const { return active_[v] == epoch_; }

  void activate(std::uint32_t v, std::vector<std::uint32_t>& into) {
    if (is_active(v)) return;
    active_[v] = epoch_;
    into.push_back(v);
    activated_.push_back(v);
  }

  // First touch of v in a layer during this run resets its accumulators; LT
  // thresholds are drawn here, which has the same law as drawing them all upfront.
  void touch(LayerState& st, std::uint32_t v, ModelKind kind, Rng* rng) {
    if (st.stamp[v] == epoch_) return;
    st.stamp[v] = epoch_;
    st.acc[v] = 0.0;
    st.count[v] = 0;
    if (kind == ModelKind::lt && rng != nullptr) st.theta[v] = uniform01(*rng);
  }

  void step_layer(std::size_t li, Rng* rng, const WorldRealization* world) {
    const CompiledLayer& layer = m_.compiled(li);
    LayerState& st = layers_[li];
    for (std::uint32_t u : frontier_) {
      if (!layer.present[u]) continue;
      for (std::uint32_t p = layer.out_offsets[u]; p < layer.out_offsets[u + 1]; ++p) {
        const std::uint32_t v = layer.out_targets[p];
        if (is_active(v)) continue;
        const double w = layer.out_weights[p];
        bool fire = false;
        switch (layer.kind) {
          case ModelKind::ic:
            fire = rng != nullptr ? uniform01(*rng) < w : world->layers[li].live[p] != 0;
            break;
          case ModelKind::lt:
            if (rng != nullptr) {
              touch(st, v, layer.kind, rng);
              st.acc[v] += w;
              fire = st.acc[v] >= st.theta[v];
            } else {
              fire = world->layers[li].chosen[v] == u;
            }
            break;
          case ModelKind::mlt:
            touch(st, v, layer.kind, rng);
            fire = ++st.count[v] >= (layer.in_degree(v) + 1) / 2;
            break;
          case ModelKind::fixed_threshold:
            touch(st, v, layer.kind, rng);
            st.acc[v] += w;
            fire = st.acc[v] >= layer.thresholds[v];
            break;
        }
        if (fire) activate(v, next_);
      }
    }
  }

  const Multiplex& m_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> active_;
  std::vector<LayerState> layers_;
  std::vector<std::uint32_t> frontier_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> activated_;
};

std::vector<UserId> to_users(const Multiplex& m, const std::vector<std::uint32_t>& dense) {
  std::vector<UserId> out;
  out.reserve(dense.size());
  for (std::uint32_t d : dense) out.push_back(m.user_at(d));
  std::sort(out.begin(), out.end());
  return out;
}

void check_world(const Multiplex& m, const WorldRealization& w) {
  if (w.layers.size() != m.layer_count()) {
    throw InvalidInput("world realization has " + std::to_string(w.layers.size()) +
                       " layers, multiplex has " + std::to_string(m.layer_count()));
  }
  for (std::size_t i = 0; i < m.layer_count(); ++i) {
    const CompiledLayer& c = m.compiled(i);
    if (c.kind == ModelKind::ic && w.layers[i].live.size() != c.edge_count()) {
      throw InvalidInput("world realization does not match IC layer " + std::to_string(i));
    }
    if (c.kind == ModelKind::lt && w.layers[i].chosen.size() != m.size()) {
      throw InvalidInput("world realization does not match LT layer " + std::to_string(i));
    }
  }
}

std::vector<std::uint32_t> layer_seeds(const Multiplex& m, std::size_t layer,
                                       std::span<const UserId> seeds) {
  const CompiledLayer& c = m.compiled(layer);
  std::vector<std::uint32_t> out;
  for (std::uint32_t d : m.dense_seeds(seeds)) {
    if (c.present[d]) out.push_back(d);
  }
  return out;
}

SpreadEstimate summarize(const std::vector<double>& counts) {
  SpreadEstimate est;
  est.samples = counts.size();
  if (counts.empty()) return est;
  double sum = 0.0;
  for (double c : counts) sum += c;
  est.mean = sum / static_cast<double>(counts.size());
  if (counts.size() > 1) {
    double sq = 0.0;
    for (double c : counts) sq += (c - est.mean) * (c - est.mean);
    const double var = sq / static_cast<double>(counts.size() - 1);
    est.std_error = std::sqrt(var / static_cast<double>(counts.size()));
  }
  return est;
}

/// Fills counts[s] (and per_layer[s * k + i] when requested) for every sample.
void run_samples(const Multiplex& m, std::span<const std::uint32_t> seeds,
                 const PropagationConfig& cfg, std::optional<std::size_t> only_layer,
                 std::vector<double>& counts, std::vector<double>* per_layer, bool parallel) {
  if (cfg.samples == 0) throw InvalidInput("samples must be >= 1");
  const std::size_t n = cfg.samples;
  const std::size_t k = m.layer_count();
  counts.assign(n, 0.0);
  if (per_layer != nullptr) per_layer->assign(n * k, 0.0);

  auto body = [&](Cascade& cascade, std::size_t s) {
    Rng rng = make_stream(cfg.rng_seed, s);
    const auto& active = cascade.run(seeds, cfg.max_hops, only_layer, &rng, nullptr);
    counts[s] = static_cast<double>(active.size());
    if (per_layer != nullptr) {
      for (std::size_t i = 0; i < k; ++i) {
        const CompiledLayer& c = m.compiled(i);
        std::size_t members = 0;
        for (std::uint32_t v : active) members += c.present[v];
        (*per_layer)[s * k + i] = static_cast<double>(members);
      }
    }
  };

  const int threads = static_cast<int>(resolve_workers(cfg.workers));
  if (!parallel || threads <= 1 || n == 1) {
    Cascade cascade(m);
    for (std::size_t s = 0; s < n; ++s) body(cascade, s);
    return;
  }
#pragma omp parallel num_threads(threads)
  {
    Cascade cascade(m);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(n); ++s) {
      body(cascade, static_cast<std::size_t>(s));
    }
  }
}

}  // namespace

std::size_t resolve_workers(int workers) {
  if (workers > 0) return static_cast<std::size_t>(workers);
  return static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
}

std::vector<UserId> propagate_deterministic(const Multiplex& m, const WorldRealization& w,
                                            std::span<const UserId> seeds,
                                            const PropagationConfig& cfg) {
  check_world(m, w);
  Cascade cascade(m);
  const auto dense = m.dense_seeds(seeds);
  return to_users(m, cascade.run(dense, cfg.max_hops, std::nullopt, nullptr, &w));
}

std::vector<UserId> propagate_deterministic_layer(const Multiplex& m, const WorldRealization& w,
                                                  std::size_t layer, std::span<const UserId> seeds,
                                                  const PropagationConfig& cfg) {
  check_world(m, w);
  Cascade cascade(m);
  const auto dense = layer_seeds(m, layer, seeds);
  return to_users(m, cascade.run(dense, cfg.max_hops, layer, nullptr, &w));
}

std::vector<UserId> simulate_once(const Multiplex& m, std::span<const UserId> seeds, Rng& rng,
                                  const PropagationConfig& cfg) {
  Cascade cascade(m);
  const auto dense = m.dense_seeds(seeds);
  return to_users(m, cascade.run(dense, cfg.max_hops, std::nullopt, &rng, nullptr));
}

SpreadEstimate sigma_mc(const Multiplex& m, std::span<const UserId> seeds,
                        const PropagationConfig& cfg) {
  std::vector<double> counts;
  run_samples(m, m.dense_seeds(seeds), cfg, std::nullopt, counts, nullptr, true);
  return summarize(counts);
}

SpreadEstimate sigma_mc_serial(const Multiplex& m, std::span<const UserId> seeds,
                               const PropagationConfig& cfg) {
  std::vector<double> counts;
  run_samples(m, m.dense_seeds(seeds), cfg, std::nullopt, counts, nullptr, false);
  return summarize(counts);
}

SpreadBreakdown sigma_mc_breakdown(const Multiplex& m, std::span<const UserId> seeds,
                                   const PropagationConfig& cfg) {
  std::vector<double> counts;
  std::vector<double> per_layer;
  run_samples(m, m.dense_seeds(seeds), cfg, std::nullopt, counts, &per_layer, true);
  SpreadBreakdown out;
  out.total = summarize(counts);
  const std::size_t k = m.layer_count();
  out.per_layer_means.assign(k, 0.0);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    for (std::size_t i = 0; i < k; ++i) out.per_layer_means[i] += per_layer[s * k + i];
  }
  for (double& v : out.per_layer_means) v /= static_cast<double>(counts.size());
  return out;
}

SpreadEstimate sigma_layer(const Multiplex& m, std::size_t layer, std::span<const UserId> seeds,
                           const PropagationConfig& cfg) {
  (void)m.compiled(layer);
  std::vector<double> counts;
  run_samples(m, layer_seeds(m, layer, seeds), cfg, layer, counts, nullptr, true);
  return summarize(counts);
}

double estimate_spread(const Multiplex& m, std::span<const UserId> seeds,
                       const PropagationConfig& cfg, Estimator estimator) {
  if (estimator == Estimator::exact) return sigma_exact(m, seeds, cfg.max_hops);
  return sigma_mc(m, seeds, cfg).mean;
}

}  // namespace mim

#include "mim/isf.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <queue>

#include "mim/error.hpp"

namespace mim {

namespace {

struct QueueEntry {
  std::uint32_t user = 0;  // dense
  double gain = 0.0;
  double sigma_with = 0.0;
  std::size_t round = 0;
};

struct GainOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.user > b.user;
  }
};

/// sigma(S + v) for every candidate, evaluated in parallel over candidates.
std::vector<double> evaluate_all(const Multiplex& m, const std::vector<UserId>& base,
                                 const std::vector<std::uint32_t>& candidates,
                                 const PropagationConfig& cfg, Estimator estimator) {
  std::vector<double> out(candidates.size(), 0.0);
  std::vector<std::exception_ptr> errors(candidates.size());
  const int threads = static_cast<int>(resolve_workers(cfg.workers));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(candidates.size()); ++c) {
    const auto i = static_cast<std::size_t>(c);
    try {
      std::vector<UserId> seeds = base;
      seeds.push_back(m.user_at(candidates[i]));
      out[i] = estimate_spread(m, seeds, cfg, estimator);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

GreedyResult isf_select(const Multiplex& m, std::size_t budget, const PropagationConfig& cfg,
                        Estimator estimator) {
  GreedyResult result;
  const std::size_t target = std::min(budget, m.size());
  if (target == 0) return result;

  std::vector<std::uint32_t> all(m.size());
  for (std::uint32_t d = 0; d < m.size(); ++d) all[d] = d;
  const std::vector<double> singles = evaluate_all(m, {}, all, cfg, estimator);
  result.evaluations += all.size();

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, GainOrder> queue;
  for (std::uint32_t d = 0; d < m.size(); ++d) {
    queue.push({d, std::max(0.0, singles[d]), singles[d], 0});
  }

  std::vector<UserId> chosen;
  double sigma_s = 0.0;
  while (chosen.size() < target) {
    QueueEntry top = queue.top();
    queue.pop();
    if (top.round == chosen.size()) {
      chosen.push_back(m.user_at(top.user));
      sigma_s = top.sigma_with;
      result.trace.push_back({chosen.back(), sigma_s});
    } else {
      std::vector<UserId> seeds = chosen;
      seeds.push_back(m.user_at(top.user));
      top.sigma_with = estimate_spread(m, seeds, cfg, estimator);
      ++result.evaluations;
      top.gain = std::max(0.0, top.sigma_with - sigma_s);
      top.round = chosen.size();
      queue.push(top);
    }
  }
  result.seeds = chosen;
  normalize(result.seeds);
  return result;
}

GreedyResult plain_greedy_select(const Multiplex& m, std::size_t budget,
                                 const PropagationConfig& cfg, Estimator estimator) {
  GreedyResult result;
  const std::size_t target = std::min(budget, m.size());
  std::vector<UserId> chosen;
  std::vector<std::uint8_t> taken(m.size(), 0);
  double sigma_s = 0.0;
  while (chosen.size() < target) {
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t d = 0; d < m.size(); ++d) {
      if (!taken[d]) candidates.push_back(d);
    }
    const std::vector<double> values = evaluate_all(m, chosen, candidates, cfg, estimator);
    result.evaluations += candidates.size();
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double gain = std::max(0.0, values[c] - sigma_s);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    taken[candidates[best]] = 1;
    chosen.push_back(m.user_at(candidates[best]));
    sigma_s = values[best];
    result.trace.push_back({chosen.back(), sigma_s});
  }
  result.seeds = chosen;
  normalize(result.seeds);
  return result;
}

}  // namespace mim

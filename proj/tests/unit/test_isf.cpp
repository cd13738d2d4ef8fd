#include <cmath>

#include "doctest.h"
#include "mim/error.hpp"
#include "mim/isf.hpp"
#include "support/oracles.hpp"

using namespace mim;
using namespace mim::testing;

namespace {

// Random IC/LT multiplex with weights drawn from a continuum, so exact
// marginal gains are tie-free with probability one.
Multiplex tie_free_multiplex(Rng& rng) {
  for (;;) {
    Multiplex m = random_tiny_multiplex(rng, {.max_users = 7, .max_dims = 10});
    std::vector<Layer> layers;
    for (std::size_t i = 0; i < m.layer_count(); ++i) {
      Layer l = m.layer(i);
      for (Edge& e : l.edges) e.weight = 0.05 + 0.9 * uniform01(rng);
      layers.push_back(l);
    }
    Multiplex out = build_multiplex(layers);
    if (realization_space(out).dims.size() <= 12) return out;
  }
}

}  // namespace

TEST_SUITE("isf") {

TEST_CASE("toy with l = 1 picks a") {
  const GreedyResult r = isf_select(toy_multiplex(), 1, {}, Estimator::exact);
  CHECK(r.seeds == SeedSet{A});
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].sigma == 2.0);
}

TEST_CASE("budget 0 gives the empty set") {
  const GreedyResult r = isf_select(toy_multiplex(), 0, {}, Estimator::exact);
  CHECK(r.seeds.empty());
  CHECK(r.trace.empty());
}

TEST_CASE("budget equal to the universe selects everyone") {
  const Multiplex m = toy_multiplex();
  CHECK(isf_select(m, 3, {}, Estimator::exact).seeds == m.universe());
  CHECK(isf_select(m, 10, {}, Estimator::exact).seeds == m.universe());
}

TEST_CASE("deterministic IC chain picks its head") {
  Layer l;
  l.edges = {{A, B, 1.0}, {B, C, 1.0}};
  const Multiplex m = build_multiplex({l});
  const GreedyResult r = isf_select(m, 1, {}, Estimator::exact);
  CHECK(r.seeds == SeedSet{A});
  CHECK(r.trace[0].sigma == 3.0);
  PropagationConfig cfg;
  cfg.samples = 50;
  CHECK(isf_select(m, 1, cfg, Estimator::monte_carlo).seeds == SeedSet{A});
}

TEST_CASE("exact estimator refusal propagates") {
  Layer l;
  for (UserId u = 1; u <= 22; ++u) l.edges.push_back({0, u, 0.5});
  CHECK_THROWS_AS(isf_select(build_multiplex({l}), 1, {}, Estimator::exact), TooLarge);
}

TEST_CASE("lazy and plain greedy agree on tie-free instances") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Multiplex m = tie_free_multiplex(rng);
    for (std::size_t l = 1; l <= 3; ++l) {
      const auto lazy = isf_select(m, l, {}, Estimator::exact);
      const auto plain = plain_greedy_select(m, l, {}, Estimator::exact);
      REQUIRE(lazy.trace.size() == plain.trace.size());
      for (std::size_t t = 0; t < lazy.trace.size(); ++t) {
        CHECK(lazy.trace[t].user == plain.trace[t].user);
        CHECK(lazy.trace[t].sigma == doctest::Approx(plain.trace[t].sigma));
      }
      CHECK(lazy.evaluations <= plain.evaluations);
    }
  }
}

TEST_CASE("greedy reaches 1 - 1/e of the optimum and its trace is non-decreasing") {
  Rng rng(22);
  const double ratio = 1.0 - std::exp(-1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Multiplex m = random_tiny_multiplex(rng, {.max_users = 7});
    for (std::size_t l = 1; l <= 3; ++l) {
      const auto r = isf_select(m, l, {}, Estimator::exact);
      const double got = sigma_exact(m, r.seeds);
      CHECK(got >= ratio * exhaustive_optimum(m, l).sigma - 1e-9);
      for (std::size_t t = 1; t < r.trace.size(); ++t) CHECK(r.trace[t].sigma >= r.trace[t - 1].sigma);
    }
  }
}

TEST_CASE("Monte Carlo selection is reproducible and worker-count invariant") {
  Rng rng(23);
  const Multiplex m = random_tiny_multiplex(rng, {.max_users = 6, .allow_threshold_models = true});
  PropagationConfig cfg;
  cfg.samples = 300;
  cfg.rng_seed = 5;
  cfg.workers = 1;
  const auto one = isf_select(m, 2, cfg, Estimator::monte_carlo);
  cfg.workers = 3;
  const auto three = isf_select(m, 2, cfg, Estimator::monte_carlo);
  CHECK(one.seeds == three.seeds);
  REQUIRE(one.trace.size() == three.trace.size());
  for (std::size_t t = 0; t < one.trace.size(); ++t) CHECK(one.trace[t].sigma == three.trace[t].sigma);
}

}  // TEST_SUITE

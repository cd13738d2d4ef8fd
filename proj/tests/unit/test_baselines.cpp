#include <algorithm>

#include "doctest.h"
#include "mim/baselines.hpp"
#include "support/oracles.hpp"

using namespace mim;
using namespace mim::testing;

namespace {

Layer chain(std::size_t index, UserId base, std::size_t len, double w = 0.5) {
  Layer l;
  l.index = index;
  for (UserId u = base; u + 1 < base + len; ++u) l.edges.push_back({u, u + 1, w});
  return l;
}

const SingleLayerSeeder kExact{.kind = SeederKind::greedy_celf, .estimator = Estimator::exact};

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("even split") {
  CHECK(even_split(9, 3) == std::vector<std::size_t>{3, 3, 3});
  CHECK(even_split(10, 3) == std::vector<std::size_t>{4, 3, 3});
  CHECK(even_split(11, 3) == std::vector<std::size_t>{4, 4, 3});
  CHECK(even_split(2, 3) == std::vector<std::size_t>{1, 1, 0});
  CHECK(even_split(5, 1) == std::vector<std::size_t>{5});
}

TEST_CASE("one layer: both baselines are the seeder") {
  const Multiplex m = build_multiplex({chain(0, 0, 6)});
  PropagationConfig task;
  task.rng_seed = derive_seed(1, 0, 2);
  const auto expected = seed_layer(m.single_layer(0), 2, task, kExact).seeds;
  CHECK(even_seed(m, 2, kExact, {}).seeds == expected);
  CHECK(best_single_network(m, 2, kExact, {}).seeds == expected);
}

TEST_CASE("even seed unions the per-layer picks") {
  const Multiplex m = build_multiplex({chain(0, 0, 5), chain(1, 10, 5), chain(2, 20, 5)});
  const auto r = even_seed(m, 4, kExact, {});
  CHECK(r.budget_split == std::vector<std::size_t>{2, 1, 1});
  CHECK(r.seeds.size() == 4);
  CHECK(r.layer_spreads.size() == 3);
}

TEST_CASE("even seed spends min(l, achievable)") {
  const Multiplex m = build_multiplex({chain(0, 0, 2), chain(1, 10, 8)});
  const auto r = even_seed(m, 6, kExact, {});
  CHECK(r.budget_split == std::vector<std::size_t>{3, 3});
  CHECK(r.seeds.size() == 5);  // layer 0 has only two users
}

TEST_CASE("BSN stays inside the best layer") {
  const Multiplex m = build_multiplex({chain(0, 0, 3, 0.9), chain(1, 10, 8, 0.9), chain(2, 20, 4, 0.9)});
  const auto r = best_single_network(m, 2, kExact, {});
  REQUIRE(r.chosen_layer.has_value());
  CHECK(*r.chosen_layer == 1);
  CHECK(r.budget_split == std::vector<std::size_t>{0, 2, 0});
  for (UserId u : r.seeds) CHECK(m.in_layer(1, u));
}

TEST_CASE("BSN never picks an empty layer unless all are empty") {
  Layer empty;
  empty.index = 0;
  const Multiplex m = build_multiplex({empty, chain(1, 0, 3)});
  CHECK(*best_single_network(m, 1, kExact, {}).chosen_layer == 1);

  Layer e1;
  e1.index = 1;
  const Multiplex both = build_multiplex({empty, e1});
  const auto r = best_single_network(both, 1, kExact, {});
  CHECK(*r.chosen_layer == 0);
  CHECK(r.seeds.empty());
}

TEST_CASE("BSN ties go to the lowest layer") {
  const Multiplex m = build_multiplex({chain(0, 0, 4, 1.0), chain(1, 10, 4, 1.0)});
  CHECK(*best_single_network(m, 1, kExact, {}).chosen_layer == 0);
}

}  // TEST_SUITE

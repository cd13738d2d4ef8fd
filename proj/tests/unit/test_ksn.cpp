#include <algorithm>

#include "doctest.h"
#include "mim/error.hpp"
#include "mim/ksn.hpp"
#include "support/oracles.hpp"

using namespace mim;
using namespace mim::testing;

namespace {

KsnOptions exact_options(ProfitMode mode = ProfitMode::multiplex) {
  KsnOptions o;
  o.seeder = {.kind = SeederKind::exhaustive, .estimator = Estimator::exact};
  o.solver = MckpSolver::exact_dp;
  o.profit_mode = mode;
  o.profit_estimator = Estimator::exact;
  return o;
}

Layer path_layer(std::size_t index, UserId base, std::size_t len, ModelKind kind = ModelKind::ic) {
  Layer l;
  l.index = index;
  l.model.kind = kind;
  for (UserId u = base; u + 1 < base + len; ++u) l.edges.push_back({u, u + 1, 0.6});
  return l;
}

}  // namespace

TEST_SUITE("ksn") {

TEST_CASE("toy with l = 1 and exact everything gives the budget to layer 1") {
  const Multiplex m = toy_multiplex();
  const KsnResult r = ksn_select(m, 1, exact_options(), {});
  CHECK(r.seeds == SeedSet{A});
  CHECK(r.report.budget_split == std::vector<std::size_t>{0, 1});
  const auto& t = r.report.table.entries;
  // layer 0 seeder: every single seed spreads 1 inside the layer, tie to a
  CHECK(t[0][1].seeds == SeedSet{A});
  CHECK(t[0][1].profit == 2.0);
  CHECK(t[1][1].seeds == SeedSet{A});
  CHECK(t[1][1].profit == 2.0);
  CHECK(r.report.mckp_profit == 2.0);
}

TEST_CASE("toy per-layer profits") {
  const KsnResult r = ksn_select(toy_multiplex(), 1, exact_options(ProfitMode::per_layer), {});
  const auto& t = r.report.table.entries;
  CHECK(t[0][1].profit == 1.0);
  CHECK(t[1][1].profit == 1.5);
  CHECK(r.report.budget_split == std::vector<std::size_t>{0, 1});
  CHECK(r.seeds == SeedSet{A});
}

TEST_CASE("table shape") {
  const Multiplex m = toy_multiplex();
  const SeedingTable t = build_table(m, 1, exact_options(), {});
  REQUIRE(t.entries.size() == 2);
  for (const auto& row : t.entries) {
    REQUIRE(row.size() == 2);
    CHECK(row[0].seeds.empty());
    CHECK(row[0].cost == 0);
    CHECK(row[0].profit == 0.0);
  }
  // layer 1 has two users, so j = 3 saturates at cost 2
  const SeedingTable wide = build_table(m, 3, exact_options(), {});
  CHECK(wide.entries[1][3].cost == 2);
  CHECK(wide.entries[0][3].cost == 3);
}

TEST_CASE("empty layer row is all zero") {
  Layer empty;
  empty.index = 1;
  const Multiplex m = build_multiplex({path_layer(0, 0, 4), empty});
  const SeedingTable t = build_table(m, 3, exact_options(ProfitMode::per_layer), {});
  for (const auto& e : t.entries[1]) {
    CHECK(e.seeds.empty());
    CHECK(e.profit == 0.0);
  }
}

TEST_CASE("disjoint layers spend the budget exactly") {
  const Multiplex m = build_multiplex({path_layer(0, 0, 5), path_layer(1, 10, 5, ModelKind::lt),
                                       path_layer(2, 20, 5)});
  KsnOptions o;
  o.seeder = {.kind = SeederKind::greedy_celf, .estimator = Estimator::exact};
  o.profit_estimator = Estimator::exact;
  o.solver = MckpSolver::exact_dp;
  for (std::size_t l = 1; l <= 6; ++l) {
    const KsnResult r = ksn_select(m, l, o, {});
    CHECK(r.seeds.size() == l);
    std::size_t spent = 0;
    for (std::size_t j : r.report.budget_split) spent += j;
    CHECK(spent <= l);
  }
}

TEST_CASE("one layer reduces to the seeder") {
  const Multiplex m = build_multiplex({path_layer(0, 0, 6)});
  const auto opts = exact_options(ProfitMode::per_layer);
  for (std::size_t l = 1; l <= 3; ++l) {
    const KsnResult r = ksn_select(m, l, opts, {});
    PropagationConfig task;
    task.rng_seed = derive_seed(1, 0, l);
    CHECK(r.seeds == seed_layer(m.single_layer(0), l, task, opts.seeder).seeds);
    CHECK(r.seeds.size() == l);
  }
}

TEST_CASE("budget feasibility and worker invariance with Monte Carlo") {
  Rng rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const Multiplex m = random_tiny_multiplex(rng, {.allow_threshold_models = true});
    KsnOptions o;
    PropagationConfig cfg;
    cfg.samples = 200;
    cfg.rng_seed = 3;
    cfg.workers = 1;
    const KsnResult one = ksn_select(m, 3, o, cfg);
    cfg.workers = 4;
    const KsnResult four = ksn_select(m, 3, o, cfg);
    CHECK(one.seeds == four.seeds);
    CHECK(one.report.budget_split == four.report.budget_split);
    std::size_t cost = 0;
    for (std::size_t i = 0; i < m.layer_count(); ++i) {
      cost += one.report.table.entries[i][one.report.budget_split[i]].cost;
    }
    CHECK(cost <= 3);
    CHECK(one.seeds.size() <= 3);
  }
}

TEST_CASE("budget 0 selects nothing") {
  const KsnResult r = ksn_select(toy_multiplex(), 0, exact_options(), {});
  CHECK(r.seeds.empty());
  CHECK(r.report.budget_split == std::vector<std::size_t>{0, 0});
}

TEST_CASE("seeder errors carry the failing cell") {
  Layer mlt = path_layer(0, 0, 4, ModelKind::mlt);
  KsnOptions o;
  o.seeder.kind = SeederKind::ris;
  CHECK_THROWS_WITH_AS(ksn_select(build_multiplex({mlt}), 2, o, {}),
                       doctest::Contains("layer 0, budget 1"), UnsupportedModel);
}

TEST_CASE("profit mode names") {
  CHECK(parse_profit_mode("per_layer") == ProfitMode::per_layer);
  CHECK(parse_profit_mode("multiplex") == ProfitMode::multiplex);
  CHECK_THROWS_AS(parse_profit_mode("global"), InvalidInput);
}

}  // TEST_SUITE

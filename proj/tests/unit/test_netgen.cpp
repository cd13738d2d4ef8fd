#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "mim/error.hpp"
#include "mim/experiment.hpp"
#include "mim/netgen.hpp"

using namespace mim;

namespace {

std::vector<std::size_t> degrees(const LayerSkeleton& g) {
  std::vector<std::size_t> d(g.n, 0);
  for (const auto& e : g.edges) ++d[e.first];  // out-degree == undirected degree
  return d;
}

double tail_fraction(const LayerSkeleton& g, std::size_t at_least) {
  const auto d = degrees(g);
  return static_cast<double>(std::count_if(d.begin(), d.end(), [&](std::size_t x) { return x >= at_least; })) /
         static_cast<double>(g.n);
}

}  // namespace

TEST_SUITE("netgen") {

TEST_CASE("BA edge count") {
  Rng rng(61);
  const LayerSkeleton g = gen_ba_layer(1000, 4, rng);
  // (m+1)-clique plus m links per later node, both directions
  CHECK(g.edges.size() == 2 * (10 + 4 * (1000 - 5)));
  const double avg_undirected = static_cast<double>(g.edges.size()) / 2.0 / 1000.0;
  CHECK(avg_undirected == doctest::Approx(4.0).epsilon(0.01));

  std::set<std::pair<std::uint32_t, std::uint32_t>> unique(g.edges.begin(), g.edges.end());
  CHECK(unique.size() == g.edges.size());
  for (const auto& [a, b] : g.edges) {
    CHECK(a != b);
    CHECK(unique.count({b, a}) == 1);
  }
}

TEST_CASE("BA smallest case is a single edge") {
  Rng rng(62);
  const LayerSkeleton g = gen_ba_layer(2, 1, rng);
  CHECK(g.edges.size() == 2);
  CHECK_THROWS_AS(gen_ba_layer(3, 3, rng), InvalidInput);
  CHECK_THROWS_AS(gen_ba_layer(10, 0, rng), InvalidInput);
}

TEST_CASE("ER edge count within 3 sigma") {
  Rng rng(63);
  const LayerSkeleton g = gen_er_layer(1000, 5.0, rng);
  const double pairs = 1000.0 * 999.0 / 2.0;
  const double p = 5.0 / 999.0;
  const double mean = pairs * p;
  const double sd = std::sqrt(pairs * p * (1 - p));
  const double undirected = static_cast<double>(g.edges.size()) / 2.0;
  CHECK(std::abs(undirected - mean) <= 3 * sd);
}

TEST_CASE("ER extremes") {
  Rng rng(64);
  CHECK(gen_er_layer(50, 0.0, rng).edges.empty());
  CHECK(gen_er_layer(10, 100.0, rng).edges.size() == 90);  // p clamps to 1
}

TEST_CASE("BA tail is heavier than ER of equal density") {
  Rng rng(65);
  const LayerSkeleton ba = gen_ba_layer(1000, 4, rng);
  const LayerSkeleton er = gen_er_layer(1000, 8.0, rng);
  CHECK(tail_fraction(ba, 32) > tail_fraction(er, 32));
  CHECK(tail_fraction(ba, 32) > 0.0);
}

TEST_CASE("generators are deterministic") {
  Rng a(66), b(66);
  CHECK(gen_ba_layer(300, 3, a).edges == gen_ba_layer(300, 3, b).edges);
  CHECK(gen_er_layer(300, 4.0, a).edges == gen_er_layer(300, 4.0, b).edges);
}

TEST_CASE("wire_overlap") {
  Rng rng(67);
  std::vector<LayerSkeleton> layers;
  for (int i = 0; i < 3; ++i) layers.push_back(gen_ba_layer(1000, 4, rng));

  SUBCASE("o = 0 gives disjoint ids") {
    const Multiplex m = wire_overlap(layers, 0, rng);
    CHECK(m.size() == 3000);
    CHECK(overlap_count(m) == 0);
  }
  SUBCASE("o = 500 shared by all three layers") {
    const Multiplex m = wire_overlap(layers, 500, rng);
    // each shared user merges three nodes: 3000 - 2 * 500
    CHECK(m.size() == 2000);
    CHECK(overlap_count(m) == 500);
    for (UserId u = 0; u < 500; ++u) {
      for (std::size_t i = 0; i < 3; ++i) CHECK(m.in_layer(i, u));
    }
  }
  SUBCASE("edge structure is preserved up to relabelling") {
    const Multiplex m = wire_overlap(layers, 200, rng);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(m.layer(i).edges.size() == layers[i].edges.size());
      std::vector<std::size_t> before = degrees(layers[i]);
      std::vector<std::size_t> after;
      for (UserId u : m.universe()) {
        if (m.in_layer(i, u)) after.push_back(m.compiled(i).out_degree(m.dense(u)));
      }
      std::sort(before.begin(), before.end());
      std::sort(after.begin(), after.end());
      CHECK(before == after);
    }
  }
  SUBCASE("o equal to the smallest layer") {
    std::vector<LayerSkeleton> mixed{gen_ba_layer(50, 2, rng), gen_ba_layer(80, 2, rng)};
    const Multiplex m = wire_overlap(mixed, 50, rng);
    CHECK(overlap_count(m) == 50);
    for (UserId u : m.universe()) {
      if (m.in_layer(0, u)) CHECK(u < 50);
    }
    CHECK_THROWS_AS(wire_overlap(mixed, 51, rng), InvalidInput);
  }
}

TEST_CASE("assign_models") {
  Rng rng(68);
  std::vector<LayerSkeleton> layers;
  for (int i = 0; i < 3; ++i) layers.push_back(gen_ba_layer(100, 3, rng));
  const Multiplex wired = wire_overlap(layers, 10, rng);

  SUBCASE("LT, IC, MLT with uniform weights") {
    const Multiplex m = assign_models(wired, {ModelKind::lt, ModelKind::ic, ModelKind::mlt}, {}, rng);
    CHECK(m.layer(0).model.kind == ModelKind::lt);
    CHECK(m.layer(2).model.kind == ModelKind::mlt);
    for (std::size_t i = 0; i < 3; ++i) {
      for (const Edge& e : m.layer(i).edges) {
        CHECK(e.weight >= 0.0);
        CHECK(e.weight <= 1.0);
      }
    }
    // LT in-weights were normalized
    const CompiledLayer& lt = m.compiled(0);
    for (std::uint32_t v = 0; v < m.size(); ++v) {
      double total = 0.0;
      for (std::uint32_t p = lt.in_offsets[v]; p < lt.in_offsets[v + 1]; ++p) total += lt.in_weights[p];
      CHECK(total <= 1.0 + 1e-12);
    }
    CHECK(m.overlap() == wired.overlap());
  }
  SUBCASE("small weights lie in (0, 0.1)") {
    const Multiplex m = assign_models(wired, {ModelKind::ic, ModelKind::lt, ModelKind::ic},
                                      {.dist = WeightDistribution::uniform_0_01}, rng);
    for (const Edge& e : m.layer(0).edges) {
      CHECK(e.weight > 0.0);
      CHECK(e.weight < 0.1);
    }
  }
  SUBCASE("constant weights on a DAG give deterministic cascades") {
    Layer dag;
    dag.edges = {{0, 1, 0.3}, {1, 2, 0.3}, {0, 3, 0.3}};
    const Multiplex m = assign_models(build_multiplex({dag}), {ModelKind::ic},
                                      {.dist = WeightDistribution::constant, .constant = 1.0}, rng);
    const SeedSet s{0};
    PropagationConfig cfg;
    cfg.samples = 50;
    const auto est = sigma_mc(m, s, cfg);
    CHECK(est.mean == 4.0);
    CHECK(est.std_error == 0.0);
  }
  SUBCASE("wrong number of models") {
    CHECK_THROWS_AS(assign_models(wired, {ModelKind::ic}, {}, rng), InvalidInput);
  }
}

TEST_CASE("generate_multiplex keeps skeletons fixed while overlap varies") {
  GeneratorConfig gen;
  gen.n = 200;
  const Multiplex a = generate_multiplex(gen, 5);
  gen.overlap = 33;
  const Multiplex b = generate_multiplex(gen, 5);
  CHECK(overlap_count(a) == 0);
  CHECK(overlap_count(b) == 33);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.layer(i).edges.size() == b.layer(i).edges.size());
  CHECK(a.layer(0).model.kind == ModelKind::lt);
  CHECK(a.layer(1).model.kind == ModelKind::ic);
  CHECK(a.layer(2).model.kind == ModelKind::mlt);
  const Multiplex again = generate_multiplex(gen, 5);
  CHECK(again.layer(1).edges == b.layer(1).edges);
}

}  // TEST_SUITE

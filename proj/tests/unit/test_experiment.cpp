#include <sstream>

#include "doctest.h"
#include "mim/error.hpp"
#include "mim/experiment.hpp"
#include "support/oracles.hpp"

using namespace mim;
using namespace mim::testing;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  GeneratorConfig g;
  g.n = 40;
  g.ba_m = 2;
  g.overlap = 5;
  c.generator = g;
  c.budgets = {2, 4};
  c.cfg.samples = 100;
  c.cfg.max_hops = 4;
  c.eval_samples = 300;
  c.master_seed = 17;
  return c;
}

std::string numeric_csv(std::vector<RunRecord> records) {
  for (auto& r : records) r.wall_s = r.cpu_s = 0.0;
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("one row per algorithm and budget") {
  const auto records = run_experiment(small_config());
  REQUIRE(records.size() == 8);
  CHECK(records[0].algorithm == "isf");
  CHECK(records[1].l == 4);
  CHECK(records[7].algorithm == "bsn");
  for (const auto& r : records) {
    CHECK(r.seeds.size() <= r.l);
    CHECK(std::is_sorted(r.seeds.begin(), r.seeds.end()));
    CHECK(r.per_layer_seed_counts.size() == 3);
    CHECK(r.per_layer_activation_means.size() == 3);
    CHECK(r.sigma_mean >= static_cast<double>(r.seeds.size()));
    CHECK(r.seed_overlap_fraction >= 0.0);
    CHECK(r.seed_overlap_fraction <= 1.0);
  }
}

TEST_CASE("same master seed gives identical numeric output") {
  const auto a = run_experiment(small_config());
  const auto b = run_experiment(small_config());
  CHECK(numeric_csv(a) == numeric_csv(b));
  ExperimentConfig c = small_config();
  c.cfg.workers = 3;
  CHECK(numeric_csv(run_experiment(c)) == numeric_csv(a));
}

TEST_CASE("CSV round-trips every field") {
  auto records = run_experiment(small_config());
  records[0].algorithm = "isf, \"quoted\"";
  records[1].per_layer_activation_means = {1.0 / 3.0, 1e-300, 7.0};
  records[2].seeds.clear();
  std::ostringstream out;
  write_csv(out, records);
  std::istringstream in(out.str());
  const auto back = read_csv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].algorithm == records[i].algorithm);
    CHECK(back[i].l == records[i].l);
    CHECK(back[i].sigma_mean == records[i].sigma_mean);
    CHECK(back[i].sigma_stderr == records[i].sigma_stderr);
    CHECK(back[i].wall_s == records[i].wall_s);
    CHECK(back[i].cpu_s == records[i].cpu_s);
    CHECK(back[i].seeds == records[i].seeds);
    CHECK(back[i].per_layer_seed_counts == records[i].per_layer_seed_counts);
    CHECK(back[i].per_layer_activation_means == records[i].per_layer_activation_means);
  }
}

TEST_CASE("CSV header and shape") {
  RunRecord r;
  r.algorithm = "isf";
  r.l = 1;
  r.sigma_mean = 2;
  r.seeds = {0, 3};
  r.per_layer_seed_counts = {1, 2};
  r.per_layer_activation_means = {1.5, 2};
  std::ostringstream out;
  write_csv(out, {r});
  CHECK(out.str() ==
        "algorithm,l,sigma_mean,sigma_stderr,wall_s,cpu_s,seeds_json,per_layer_seed_counts,"
        "per_layer_activation_means\nisf,1,2,0,0,0,\"[0,3]\",1;2,1.5;2\n");
  std::istringstream bad_header("a,b\n");
  CHECK_THROWS_AS(read_csv(bad_header), ParseError);
  std::istringstream bad_row(out.str() + "isf,1,2\n");
  CHECK_THROWS_WITH_AS(read_csv(bad_row), doctest::Contains("row 3"), ParseError);
}

TEST_CASE("tiny manifest-free run with ISF only") {
  ExperimentConfig c = small_config();
  c.algorithms = {"isf"};
  c.budgets = {1};
  CHECK(run_experiment(c).size() == 1);
  c.algorithms = {"degree"};
  CHECK_THROWS_AS(run_experiment(c), InvalidInput);
  c.generator.reset();
  CHECK_THROWS_AS(run_experiment(c), InvalidInput);
}

TEST_CASE("per-layer seed counts count overlapping seeds in every layer") {
  const Multiplex m = toy_multiplex();
  ExperimentConfig c;
  c.cfg.samples = 50;
  c.eval_samples = 50;
  const RunRecord r = run_algorithm(m, "isf", 3, c);
  CHECK(r.seeds == SeedSet{A, B, C});
  CHECK(r.per_layer_seed_counts == std::vector<std::size_t>{3, 2});
  CHECK(r.sigma_mean == 3.0);
  CHECK(r.seed_overlap_fraction == doctest::Approx(2.0 / 3.0));
}

}  // TEST_SUITE

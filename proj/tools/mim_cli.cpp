// mim: command-line front end for multiplex seeding.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mim/baselines.hpp"
#include "mim/error.hpp"
#include "mim/exact.hpp"
#include "mim/experiment.hpp"
#include "mim/io.hpp"
#include "mim/isf.hpp"
#include "mim/ksn.hpp"
#include "mim/mckp.hpp"

using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::optional<std::size_t> max_hops;
  int workers = 0;
  std::string profit_mode = "multiplex";
  std::string solver = "greedy_half";
  std::string seeder = "greedy_celf";
  std::size_t rr_sets = 10000;
};

struct GenFlags {
  std::string family = "ba";
  std::size_t layers = 3;
  std::size_t n = 200;
  std::size_t ba_m = 4;
  double er_degree = 5.0;
  std::size_t overlap = 0;
  std::vector<std::string> models;
  std::string weights = "uniform01";
  double weight_constant = 1.0;
};

void add_gen_flags(CLI::App* cmd, GenFlags& g) {
  cmd->add_option("--family", g.family, "ba or er")->check(CLI::IsMember({"ba", "er"}));
  cmd->add_option("--layers", g.layers, "number of layers");
  cmd->add_option("--n", g.n, "nodes per layer");
  cmd->add_option("--ba-m", g.ba_m, "BA edges per new node");
  cmd->add_option("--er-degree", g.er_degree, "ER average degree");
  cmd->add_option("--overlap", g.overlap, "overlapping users");
  cmd->add_option("--models", g.models, "model per layer (IC, LT, MLT, FixedThreshold)")
      ->delimiter(',');
  cmd->add_option("--weights", g.weights, "uniform01, uniform0.1 or constant");
  cmd->add_option("--weight-constant", g.weight_constant, "weight for --weights constant");
}

mim::GeneratorConfig to_generator(const GenFlags& g) {
  mim::GeneratorConfig gen;
  gen.family = g.family == "er" ? mim::GraphFamily::er : mim::GraphFamily::ba;
  gen.layers = g.layers;
  gen.n = g.n;
  gen.ba_m = g.ba_m;
  gen.er_avg_degree = g.er_degree;
  gen.overlap = g.overlap;
  for (const auto& s : g.models) gen.models.push_back(mim::parse_model_kind(s));
  gen.weights.dist = mim::parse_weight_distribution(g.weights);
  gen.weights.constant = g.weight_constant;
  return gen;
}

mim::PropagationConfig to_cfg(const Globals& g) {
  mim::PropagationConfig cfg;
  cfg.rng_seed = g.seed;
  cfg.samples = g.samples;
  cfg.max_hops = g.max_hops;
  cfg.workers = g.workers;
  return cfg;
}

mim::KsnOptions to_ksn(const Globals& g) {
  mim::KsnOptions o;
  o.seeder.kind = mim::parse_seeder_kind(g.seeder);
  o.seeder.rr_sets = g.rr_sets;
  o.solver = mim::parse_mckp_solver(g.solver);
  o.profit_mode = mim::parse_profit_mode(g.profit_mode);
  return o;
}

json record_json(const mim::RunRecord& r) {
  return json{{"algorithm", r.algorithm},
              {"l", r.l},
              {"seeds", r.seeds},
              {"sigma_mean", r.sigma_mean},
              {"sigma_stderr", r.sigma_stderr},
              {"per_layer_seed_counts", r.per_layer_seed_counts},
              {"per_layer_activation_means", r.per_layer_activation_means},
              {"seed_overlap_fraction", r.seed_overlap_fraction},
              {"wall_s", r.wall_s},
              {"cpu_s", r.cpu_s}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed selection on multiplex social networks"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "master RNG seed");
  app.add_option("--samples", g.samples, "Monte Carlo samples per estimate");
  app.add_option("--max-hops", g.max_hops, "cap on propagation rounds");
  app.add_option("--workers", g.workers, "OpenMP threads (0 = default)");
  app.add_option("--profit-mode", g.profit_mode, "KSN profits: multiplex or per_layer");
  app.add_option("--solver", g.solver, "MCKP solver: exact_dp or greedy_half");
  app.add_option("--seeder", g.seeder, "single-layer seeder: greedy_celf, ris or exhaustive");
  app.add_option("--rr-sets", g.rr_sets, "RR sets per RIS run");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write a synthetic multiplex as a manifest");
  GenFlags gen_flags;
  std::string out_dir = ".";
  std::string stem = "multiplex";
  add_gen_flags(gen_cmd, gen_flags);
  gen_cmd->add_option("--out-dir", out_dir, "output directory");
  gen_cmd->add_option("--stem", stem, "file name stem");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "estimate the spread of a seed set");
  std::string manifest;
  std::vector<mim::UserId> seeds;
  bool exact = false;
  est_cmd->add_option("--manifest", manifest, "multiplex manifest")->required();
  est_cmd->add_option("--seeds", seeds, "seed user ids")->delimiter(',');
  est_cmd->add_flag("--exact", exact, "enumerate realizations instead of sampling");

  // select
  auto* sel_cmd = app.add_subcommand("select", "choose seeds with one algorithm");
  std::string algorithm = "isf";
  std::size_t budget = 1;
  std::size_t eval_samples = 2000;
  sel_cmd->add_option("--manifest", manifest, "multiplex manifest")->required();
  sel_cmd->add_option("--algorithm", algorithm, "isf, ksn, es or bsn")
      ->check(CLI::IsMember({"isf", "ksn", "es", "bsn"}));
  sel_cmd->add_option("--budget,-l", budget, "number of seeds")->required();
  sel_cmd->add_option("--eval-samples", eval_samples, "samples for the final estimate");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "sweep algorithms and budgets into a CSV");
  GenFlags exp_gen;
  std::vector<std::string> algorithms{"isf", "ksn", "es", "bsn"};
  std::vector<std::size_t> budgets;
  std::string out_csv;
  exp_cmd->add_option("--manifest", manifest, "multiplex manifest (instead of generating)");
  add_gen_flags(exp_cmd, exp_gen);
  exp_cmd->add_option("--algorithms", algorithms, "comma-separated algorithms")->delimiter(',');
  exp_cmd->add_option("--budgets", budgets, "comma-separated budgets")->delimiter(',')->required();
  exp_cmd->add_option("--eval-samples", eval_samples, "samples for the final estimates");
  exp_cmd->add_option("--out", out_csv, "CSV path (stdout if omitted)");

  // mckp-solve
  auto* mckp_cmd = app.add_subcommand("mckp-solve", "solve a multiple-choice knapsack file");
  std::string mckp_input;
  mckp_cmd->add_option("input", mckp_input, "instance file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const mim::PropagationConfig cfg = to_cfg(g);

    if (*gen_cmd) {
      const mim::Multiplex m = mim::generate_multiplex(to_generator(gen_flags), g.seed);
      std::cout << mim::save_multiplex(m, out_dir, stem).string() << '\n';
    } else if (*est_cmd) {
      const mim::Multiplex m = mim::load_multiplex(manifest);
      json out;
      if (exact) {
        out = {{"mean", mim::sigma_exact(m, seeds, cfg.max_hops)}, {"exact", true}};
      } else {
        const auto b = mim::sigma_mc_breakdown(m, seeds, cfg);
        out = {{"mean", b.total.mean},
               {"std_error", b.total.std_error},
               {"samples", b.total.samples},
               {"per_layer_activation_means", b.per_layer_means}};
      }
      std::cout << out.dump(2) << '\n';
    } else if (*sel_cmd) {
      const mim::Multiplex m = mim::load_multiplex(manifest);
      mim::ExperimentConfig ec;
      ec.master_seed = g.seed;
      ec.cfg = cfg;
      ec.eval_samples = eval_samples;
      ec.ksn = to_ksn(g);
      std::cout << record_json(mim::run_algorithm(m, algorithm, budget, ec)).dump(2) << '\n';
    } else if (*exp_cmd) {
      mim::ExperimentConfig ec;
      if (!manifest.empty()) {
        ec.manifest = manifest;
      } else {
        ec.generator = to_generator(exp_gen);
      }
      ec.algorithms = algorithms;
      ec.budgets = budgets;
      ec.master_seed = g.seed;
      ec.cfg = cfg;
      ec.eval_samples = eval_samples;
      ec.ksn = to_ksn(g);
      const auto records = mim::run_experiment(ec);
      if (out_csv.empty()) {
        mim::write_csv(std::cout, records);
      } else {
        std::ofstream out(out_csv);
        if (!out) throw mim::InvalidInput("cannot write " + out_csv);
        mim::write_csv(out, records);
      }
    } else if (*mckp_cmd) {
      std::ifstream in(mckp_input);
      if (!in) throw mim::InvalidInput("cannot open " + mckp_input);
      const auto inst = mim::parse_mckp_instance(in, mckp_input);
      const auto sol = mim::solve_mckp(inst, mim::parse_mckp_solver(g.solver));
      std::cout << json{{"solver", std::string(mim::to_string(mim::parse_mckp_solver(g.solver)))},
                        {"picks", sol.picks},
                        {"total_cost", sol.total_cost},
                        {"total_profit", sol.total_profit}}
                       .dump(2)
                << '\n';
    }
  } catch (const mim::Error& e) {
    std::cerr << "mim: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

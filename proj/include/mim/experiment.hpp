#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mim/diffusion.hpp"
#include "mim/ksn.hpp"
#include "mim/multiplex.hpp"
#include "mim/netgen.hpp"
#include "mim/single_layer.hpp"

namespace mim {

enum class GraphFamily { ba, er };

struct GeneratorConfig {
  GraphFamily family = GraphFamily::ba;
  std::size_t layers = 3;
  std::size_t n = 200;
  std::size_t ba_m = 4;
  double er_avg_degree = 5.0;
  std::size_t overlap = 0;
  /// Empty: BA cycles LT, IC, MLT; ER alternates IC (even index) and LT.
  std::vector<ModelKind> models;
  WeightSpec weights;
};

/// Generates the layer skeletons, wires overlap and assigns models, all from
/// streams derived from `seed`. Skeletons depend on `seed` and the family
/// parameters only, so varying `overlap` keeps the same layers.
Multiplex generate_multiplex(const GeneratorConfig& gen, std::uint64_t seed);

std::vector<ModelKind> default_models(const GeneratorConfig& gen);

struct ExperimentConfig {
  std::optional<GeneratorConfig> generator;
  std::optional<std::filesystem::path> manifest;
  std::vector<std::string> algorithms{"isf", "ksn", "es", "bsn"};
  std::vector<std::size_t> budgets;
  std::uint64_t master_seed = 1;
  /// Settings used while selecting seeds; rng_seed is derived from master_seed.
  PropagationConfig cfg;
  /// Monte Carlo samples for the final evaluation of every seed set.
  std::size_t eval_samples = 2000;
  KsnOptions ksn;
  Estimator isf_estimator = Estimator::monte_carlo;
};

struct RunRecord {
  std::string algorithm;
  std::size_t l = 0;
  double sigma_mean = 0.0;
  double sigma_stderr = 0.0;
  double wall_s = 0.0;
  double cpu_s = 0.0;
  SeedSet seeds;
  /// Seeds that are members of each layer (overlapping seeds count in each).
  std::vector<std::size_t> per_layer_seed_counts;
  /// Mean activated members of each layer.
  std::vector<double> per_layer_activation_means;
  /// Fraction of seeds that are overlapping users. Not part of the CSV.
  double seed_overlap_fraction = 0.0;
};

/// Runs one algorithm ("isf", "ksn", "es", "bsn") with budget l and evaluates
/// the result with eval_samples Monte Carlo runs.
RunRecord run_algorithm(const Multiplex& m, const std::string& algorithm, std::size_t l,
                        const ExperimentConfig& config);

/// One record per (algorithm, l), algorithms in the outer loop.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);

/// JSON array of the sorted ids.
std::string seeds_json(const SeedSet& seeds);

}  // namespace mim

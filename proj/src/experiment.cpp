#include "mim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "mim/baselines.hpp"
#include "mim/error.hpp"
#include "mim/io.hpp"
#include "mim/isf.hpp"

namespace mim {

std::vector<ModelKind> default_models(const GeneratorConfig& gen) {
  std::vector<ModelKind> kinds;
  for (std::size_t i = 0; i < gen.layers; ++i) {
    if (gen.family == GraphFamily::ba) {
      static constexpr ModelKind cycle[] = {ModelKind::lt, ModelKind::ic, ModelKind::mlt};
      kinds.push_back(cycle[i % 3]);
    } else {
      kinds.push_back(i % 2 == 0 ? ModelKind::ic : ModelKind::lt);
    }
  }
  return kinds;
}

Multiplex generate_multiplex(const GeneratorConfig& gen, std::uint64_t seed) {
  if (gen.layers == 0) throw InvalidInput("generator needs at least one layer");
  std::vector<LayerSkeleton> skeletons;
  for (std::size_t i = 0; i < gen.layers; ++i) {
    Rng rng(derive_seed(seed, 100 + i));
    skeletons.push_back(gen.family == GraphFamily::ba ? gen_ba_layer(gen.n, gen.ba_m, rng)
                                                      : gen_er_layer(gen.n, gen.er_avg_degree, rng));
  }
  Rng wire_rng(derive_seed(seed, 200));
  const Multiplex wired = wire_overlap(skeletons, gen.overlap, wire_rng);
  Rng model_rng(derive_seed(seed, 300));
  const auto kinds = gen.models.empty() ? default_models(gen) : gen.models;
  return assign_models(wired, kinds, gen.weights, model_rng);
}

RunRecord run_algorithm(const Multiplex& m, const std::string& algorithm, std::size_t l,
                        const ExperimentConfig& config) {
  PropagationConfig cfg = config.cfg;
  cfg.rng_seed = derive_seed(config.master_seed, 1);

  RunRecord rec;
  rec.algorithm = algorithm;
  rec.l = l;
  const auto wall_start = std::chrono::steady_clock::now();
  const std::clock_t cpu_start = std::clock();
  if (algorithm == "isf") {
    rec.seeds = isf_select(m, l, cfg, config.isf_estimator).seeds;
  } else if (algorithm == "ksn") {
    rec.seeds = ksn_select(m, l, config.ksn, cfg).seeds;
  } else if (algorithm == "es") {
    rec.seeds = even_seed(m, l, config.ksn.seeder, cfg).seeds;
  } else if (algorithm == "bsn") {
    rec.seeds = best_single_network(m, l, config.ksn.seeder, cfg).seeds;
  } else {
    throw InvalidInput("unknown algorithm '" + algorithm + "' (expected isf, ksn, es or bsn)");
  }
  rec.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  rec.cpu_s = static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC;

  PropagationConfig eval = config.cfg;
  eval.samples = config.eval_samples;
  eval.rng_seed = derive_seed(config.master_seed, 3);
  const SpreadBreakdown b = sigma_mc_breakdown(m, rec.seeds, eval);
  rec.sigma_mean = b.total.mean;
  rec.sigma_stderr = b.total.std_error;
  rec.per_layer_activation_means = b.per_layer_means;
  for (std::size_t i = 0; i < m.layer_count(); ++i) {
    std::size_t c = 0;
    for (UserId u : rec.seeds) c += m.in_layer(i, u) ? 1 : 0;
    rec.per_layer_seed_counts.push_back(c);
  }
  if (!rec.seeds.empty()) {
    std::size_t overlapping = 0;
    for (UserId u : rec.seeds) {
      overlapping += std::binary_search(m.overlap().begin(), m.overlap().end(), u) ? 1 : 0;
    }
    rec.seed_overlap_fraction = static_cast<double>(overlapping) / static_cast<double>(rec.seeds.size());
  }
  return rec;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  if (config.generator.has_value() == config.manifest.has_value()) {
    throw InvalidInput("experiment needs exactly one of a generator or a manifest");
  }
  const Multiplex m = config.generator
                          ? generate_multiplex(*config.generator, derive_seed(config.master_seed, 2))
                          : load_multiplex(*config.manifest);
  std::vector<RunRecord> records;
  for (const std::string& algorithm : config.algorithms) {
    for (std::size_t l : config.budgets) records.push_back(run_algorithm(m, algorithm, l, config));
  }
  return records;
}

std::string seeds_json(const SeedSet& seeds) { return nlohmann::json(seeds).dump(); }

namespace {

constexpr const char* kHeader =
    "algorithm,l,sigma_mean,sigma_stderr,wall_s,cpu_s,seeds_json,per_layer_seed_counts,"
    "per_layer_activation_means";

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += format(values[i]);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::vector<std::string> split_semicolons(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(item);
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kHeader << '\n';
  for (const RunRecord& r : records) {
    out << quote(r.algorithm) << ',' << r.l << ',' << format_double(r.sigma_mean) << ','
        << format_double(r.sigma_stderr) << ',' << format_double(r.wall_s) << ','
        << format_double(r.cpu_s) << ',' << quote(seeds_json(r.seeds)) << ','
        << join(r.per_layer_seed_counts, [](std::size_t v) { return std::to_string(v); }) << ','
        << join(r.per_layer_activation_means, format_double) << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ParseError("CSV: unexpected header");
  std::vector<RunRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw ParseError("CSV row " + std::to_string(row) + ": expected 9 fields");
    try {
      RunRecord r;
      r.algorithm = f[0];
      r.l = std::stoull(f[1]);
      r.sigma_mean = std::stod(f[2]);
      r.sigma_stderr = std::stod(f[3]);
      r.wall_s = std::stod(f[4]);
      r.cpu_s = std::stod(f[5]);
      r.seeds = nlohmann::json::parse(f[6]).get<SeedSet>();
      for (const auto& v : split_semicolons(f[7])) r.per_layer_seed_counts.push_back(std::stoull(v));
      for (const auto& v : split_semicolons(f[8])) r.per_layer_activation_means.push_back(std::stod(v));
      records.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("CSV row " + std::to_string(row) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace mim

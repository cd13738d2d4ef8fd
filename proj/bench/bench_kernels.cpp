// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "mim/diffusion.hpp"
#include "mim/experiment.hpp"
#include "mim/single_layer.hpp"

namespace {

const mim::Multiplex& ba_multiplex() {
  static const mim::Multiplex m = [] {
    mim::GeneratorConfig g;
    g.n = 1000;
    g.overlap = 100;
    return mim::generate_multiplex(g, 1);
  }();
  return m;
}

const mim::Multiplex& er_layer() {
  static const mim::Multiplex m = [] {
    mim::GeneratorConfig g;
    g.family = mim::GraphFamily::er;
    g.layers = 1;
    g.n = 20000;
    g.models = {mim::ModelKind::ic};
    g.weights.dist = mim::WeightDistribution::uniform_0_01;
    return mim::generate_multiplex(g, 2);
  }();
  return m;
}

mim::PropagationConfig cfg_for(const benchmark::State& state) {
  mim::PropagationConfig cfg;
  cfg.samples = 2000;
  cfg.max_hops = 4;
  cfg.workers = static_cast<int>(state.range(0));
  return cfg;
}

void BM_SigmaSerial(benchmark::State& state) {
  const mim::SeedSet seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto cfg = cfg_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(mim::sigma_mc_serial(ba_multiplex(), seeds, cfg));
}

void BM_SigmaParallel(benchmark::State& state) {
  const mim::SeedSet seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  auto cfg = cfg_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(mim::sigma_mc(ba_multiplex(), seeds, cfg));
}

void BM_RrSerial(benchmark::State& state) {
  auto cfg = cfg_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(mim::generate_rr_sets_serial(er_layer(), 50000, cfg));
}

void BM_RrParallel(benchmark::State& state) {
  auto cfg = cfg_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(mim::generate_rr_sets(er_layer(), 50000, cfg));
}

}  // namespace

BENCHMARK(BM_SigmaSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RrSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RrParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

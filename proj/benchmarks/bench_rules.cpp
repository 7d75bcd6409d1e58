#include <benchmark/benchmark.h>

#include <random>

#include "reserves/generator.hpp"
#include "reserves/matching.hpp"
#include "reserves/rules.hpp"

using namespace reserves;

namespace {

Instance make_instance(int individuals, int traits, bool overlapping) {
  std::mt19937 rng(777);
  GeneratorParams p;
  p.max_individuals = individuals;
  p.max_categories = 3;
  p.max_traits = traits;
  p.allow_overlapping = overlapping;
  p.max_open_capacity = individuals / 2;
  p.max_category_capacity = individuals / 6 + 1;
  // Redraw until the pool is actually full-sized; the generator samples the
  // count uniformly up to the cap.
  for (;;) {
    Instance inst = random_instance(rng, p);
    if (static_cast<int>(inst.pool.size()) == individuals) return inst;
  }
}

void BM_max_trait_matching(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)), 4, true);
  auto graph = build_hr_graph(kOpenCategory, inst.pool, inst.quotas);
  for (auto _ : state) benchmark::DoNotOptimize(max_trait_matching(graph).cardinality());
}
BENCHMARK(BM_max_trait_matching)->Arg(32)->Arg(128)->Arg(512);

void BM_two_step_meritorious_horizontal(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)), 4, true);
  for (auto _ : state) benchmark::DoNotOptimize(two_step_meritorious_horizontal(inst));
}
BENCHMARK(BM_two_step_meritorious_horizontal)->Arg(32)->Arg(128)->Arg(512);

void BM_sci_akg_non_overlapping(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)), 4, false);
  for (auto _ : state) benchmark::DoNotOptimize(sci_akg(inst));
}
BENCHMARK(BM_sci_akg_non_overlapping)->Arg(32)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();

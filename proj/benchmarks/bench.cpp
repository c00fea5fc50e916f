#include <benchmark/benchmark.h>

#include "qlp/example31.hpp"
#include "qlp/smap.hpp"
#include "qlp/synth.hpp"

namespace {

using namespace qlp;

void BM_make_boolean(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_boolean(k));
}
BENCHMARK(BM_make_boolean)->Arg(3)->Arg(5);

void BM_complete_example31(benchmark::State& state) {
  PartialSMap part = example31::partial(false);
  for (auto _ : state) benchmark::DoNotOptimize(complete(part));
}
BENCHMARK(BM_complete_example31);

void BM_validate_example31(benchmark::State& state) {
  Completion c = complete(example31::partial(false));
  for (auto _ : state) benchmark::DoNotOptimize(validate(*c.table));
}
BENCHMARK(BM_validate_example31);

void BM_propositions_example31(benchmark::State& state) {
  Completion c = complete(example31::partial(false));
  for (auto _ : state) benchmark::DoNotOptimize(check_propositions(*c.table));
}
BENCHMARK(BM_propositions_example31);

void BM_synthesize_mo3(benchmark::State& state) {
  LatticePtr L = make_mo(3);
  const int n = static_cast<int>(state.range(0));
  ConstraintSet cs;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(L, n, cs));
}
BENCHMARK(BM_synthesize_mo3)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();

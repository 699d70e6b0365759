// Micro-benchmarks for the hot paths: set algebra, exact packing/covering,
// and translate-cover search.
#include <benchmark/benchmark.h>

#include "approxlab/certificates.hpp"
#include "approxlab/solver.hpp"
#include "approxlab/zoo.hpp"

namespace {

using namespace approxlab;

GroupPtr cyclic(long n, long scale = 1) {
  return make_group(GroupSpec::cyclic_lee(n, Rat(scale)));
}

void BM_SetProduct(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const ElementSet X = ElementSet::singleton_identity(g).thicken(Rat(state.range(0) / 8));
  for (auto _ : state) benchmark::DoNotOptimize(X.product(X));
}
BENCHMARK(BM_SetProduct)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Thicken(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const ElementSet X = ElementSet::singleton_identity(g).thicken(Rat(state.range(0) / 8));
  for (auto _ : state) benchmark::DoNotOptimize(X.thicken(Rat(2)));
}
BENCHMARK(BM_Thicken)->Arg(256)->Arg(1024)->Arg(4096);

void BM_Packing(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const ElementSet X = ElementSet::whole_group(g);
  const Rat r(state.range(0) / 16);
  for (auto _ : state) benchmark::DoNotOptimize(packing_number(X, r));
}
BENCHMARK(BM_Packing)->Arg(64)->Arg(256)->Arg(1024);

void BM_Covering(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const ElementSet X = ElementSet::whole_group(g);
  const Rat r(state.range(0) / 16);
  for (auto _ : state) benchmark::DoNotOptimize(covering_number(X, X, r));
}
BENCHMARK(BM_Covering)->Arg(64)->Arg(256)->Arg(1024);

void BM_RoughCover(benchmark::State& state) {
  const GroupPtr g = cyclic(state.range(0));
  const ElementSet X = ElementSet::singleton_identity(g).thicken(Rat(state.range(0) / 8));
  for (auto _ : state) benchmark::DoNotOptimize(rough_cover(X.power(2), X, Rat(0)));
}
BENCHMARK(BM_RoughCover)->Arg(64)->Arg(256);

void BM_Lipschitz(benchmark::State& state) {
  const GroupPtr g = make_group(GroupSpec::dihedral(state.range(0)));
  const ElementSet X = ElementSet::whole_group(g);
  for (auto _ : state) benchmark::DoNotOptimize(lipschitz_constant(X, Rat(2)));
}
BENCHMARK(BM_Lipschitz)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

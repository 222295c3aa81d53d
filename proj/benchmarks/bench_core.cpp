#include <benchmark/benchmark.h>

#include "qcover/bounds.hpp"
#include "qcover/constructions.hpp"

using namespace qcover;

namespace {

void BM_FieldMul(benchmark::State& state) {
  const auto f = Field::create(2, static_cast<unsigned>(state.range(0)));
  const Element top = static_cast<Element>(f->order() - 1);
  Element x = 1, acc = 1;
  for (auto _ : state) {
    acc = f->mul(acc, x) | 1;
    x = x == top ? 1 : x + 1;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(6)->Arg(12)->Arg(16);

void BM_Grassmannian(benchmark::State& state) {
  auto space = VectorSpace::standard(2, static_cast<unsigned>(state.range(0)));
  const auto k = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    std::uint64_t count = 0;
    for_each_in_grassmannian(space, k, [&](const Subspace&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_Grassmannian)->Args({7, 2})->Args({7, 3})->Args({8, 4});

void BM_VerifyCyclic(benchmark::State& state) {
  const auto d = cyclic_covering_7_3_2();
  const VerifyOptions options{state.range(0) == 0 ? Strategy::kBlockExpansion : Strategy::kTargetScan, 1};
  for (auto _ : state) benchmark::DoNotOptimize(verify_covering(d, 2, options).is_covering);
}
BENCHMARK(BM_VerifyCyclic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildCyclic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_covering_7_3_2().size());
}
BENCHMARK(BM_BuildCyclic)->Unit(benchmark::kMillisecond);

void BM_BoundTable(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BoundTable::build(2, n).records().size());
}
BENCHMARK(BM_BoundTable)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

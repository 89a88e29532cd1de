#include <benchmark/benchmark.h>

#include "fedo/invariants/space_dim.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace {

void BM_SpaceDimScalar(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  fedo::RankOptions opts;
  opts.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fedo::space_dim({0, -4, n}, opts).total);
}
BENCHMARK(BM_SpaceDimScalar)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SpaceDimTwoForm(benchmark::State& state) {
  fedo::RankOptions opts;
  opts.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fedo::space_dim({2, -2, 2}, opts).total);
}
BENCHMARK(BM_SpaceDimTwoForm)->Unit(benchmark::kMillisecond);

void BM_CurvatureProjector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = fedo::curvature_projector(n);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(p.random_element<fedo::Rational>(++seed));
}
BENCHMARK(BM_CurvatureProjector)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

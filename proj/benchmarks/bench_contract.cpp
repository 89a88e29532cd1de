#include <benchmark/benchmark.h>

#include "fedo/core/contract.hpp"
#include "fedo/core/random.hpp"

namespace {

using fedo::Rational;

void BM_ContractChain(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  fedo::Rng rng = fedo::make_rng({1});
  const std::vector<fedo::Tensor<Rational>> f{fedo::random_integer_tensor<Rational>(dim, 3, rng),
                                              fedo::random_integer_tensor<Rational>(dim, 3, rng),
                                              fedo::random_integer_tensor<Rational>(dim, 2, rng)};
  const fedo::ContractionPlan plan{{{0, 1, 2}, {2, 1, 3}, {3, 4}}, {0, 4}};
  const auto program = fedo::ContractionProgram::compile(plan, dim);
  std::vector<const fedo::Tensor<Rational>*> ptrs{&f[0], &f[1], &f[2]};
  for (auto _ : state) {
    auto r = program.run(std::span<const fedo::Tensor<Rational>* const>(ptrs));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ContractChain)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ContractChainPrime(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  fedo::Rng rng = fedo::make_rng({2});
  const std::vector<fedo::Tensor<fedo::FieldA>> f{fedo::random_field_tensor<fedo::FieldA>(dim, 3, rng),
                                                  fedo::random_field_tensor<fedo::FieldA>(dim, 3, rng)};
  const fedo::ContractionPlan plan{{{0, 1, 2}, {2, 1, 3}}, {0, 3}};
  const auto program = fedo::ContractionProgram::compile(plan, dim);
  std::vector<const fedo::Tensor<fedo::FieldA>*> ptrs{&f[0], &f[1]};
  for (auto _ : state) {
    auto r = program.run(std::span<const fedo::Tensor<fedo::FieldA>* const>(ptrs));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ContractChainPrime)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace

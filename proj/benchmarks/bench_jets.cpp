#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "fedo/expr/expr.hpp"
#include "fedo/identities/identities.hpp"
#include "fedo/jets/fedosov.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace {

using fedo::Rational;

void BM_CurvatureDerivatives(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = fedo::random_fedosov(n, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fedo::curvature_derivatives(f, 1));
}
BENCHMARK(BM_CurvatureDerivatives)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_BuiltinEq4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto w = fedo::standard_form(n);
  const auto r = fedo::curvature_projector(n).random_element<Rational>(1);
  const auto& e = fedo::builtin("eq4");
  for (auto _ : state) benchmark::DoNotOptimize(e(r, w));
}
BENCHMARK(BM_BuiltinEq4)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExpressionEq4(benchmark::State& state) {
  std::ifstream in(std::string(FEDO_CORPUS_DIR) + "/eq4.ten");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto c = fedo::expr::compile(fedo::expr::parse(ss.str()));
  const auto w = fedo::standard_form(3);
  const auto r = fedo::curvature_projector(3).random_element<Rational>(1);
  const fedo::expr::Bindings<Rational> b{w, r, fedo::ricci(r, w)};
  for (auto _ : state) benchmark::DoNotOptimize(fedo::expr::evaluate<Rational>(c, b));
}
BENCHMARK(BM_ExpressionEq4)->Unit(benchmark::kMillisecond);

void BM_DivergenceEq1(benchmark::State& state) {
  const auto f = fedo::random_fedosov(3, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(fedo::divergence(f, fedo::builtin("eq1")));
}
BENCHMARK(BM_DivergenceEq1)->Unit(benchmark::kMillisecond);

}  // namespace

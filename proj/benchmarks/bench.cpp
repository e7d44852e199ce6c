#include <benchmark/benchmark.h>

#include "asymkit/harry_dym_inner.hpp"
#include "asymkit/harry_dym_outer.hpp"
#include "asymkit/ilt.hpp"
#include "asymkit/p1.hpp"
#include "asymkit/puiseux.hpp"

using namespace asymkit;

namespace {

PuiseuxSeries dense_series(int terms) {
  PuiseuxSeries s("y", -6, Exponent::halves(2 * terms));
  for (int i = 0; i < terms; ++i) s.set_coefficient(Exponent::halves(i), Scalar(Rational(i + 1, 3), Rational(1, i + 2), -6));
  return s;
}

void SeriesMultiply(benchmark::State& state) {
  const auto a = dense_series(static_cast<int>(state.range(0)));
  const auto b = dense_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(SeriesMultiply)->Arg(8)->Arg(32)->Arg(64);

void P1Series(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(p1::p1_formal_series(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(P1Series)->Arg(5)->Arg(10)->Arg(20);

void OuterCoefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hd::hd_outer_coeffs(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(OuterCoefficients)->Arg(4)->Arg(8);

void LaplaceConvolution(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto f = GridFunction::sample([](double p) { return Complex(std::exp(-p), p); }, 8.0, m);
  for (auto _ : state) benchmark::DoNotOptimize(laplace_convolve(f, f));
  state.SetComplexityN(m);
}
BENCHMARK(LaplaceConvolution)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void InnerHierarchy(benchmark::State& state) {
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(hd::solve_hierarchy(static_cast<std::size_t>(state.range(0)), cfg));
}
BENCHMARK(InnerHierarchy)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cstdint>

#include "fsq/arith.hpp"
#include "fsq/factorization.hpp"
#include "fsq/primality.hpp"
#include "fsq/scan.hpp"

namespace {

using fsq::Natural;

void BM_IsPrimeSmall(benchmark::State& state) {
  const std::uint64_t base = std::uint64_t{1} << 62;
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsq::is_prime_small(base + 2 * (i++ % 4096) + 1));
  }
}
BENCHMARK(BM_IsPrimeSmall);

void BM_Isqrt(benchmark::State& state) {
  const Natural x = fsq::factorial(static_cast<std::uint64_t>(state.range(0))) + 1;
  for (auto _ : state) benchmark::DoNotOptimize(fsq::isqrt(x));
}
BENCHMARK(BM_Isqrt)->Arg(100)->Arg(1000);

void BM_FactorialResidues(benchmark::State& state) {
  const Natural m("1000000000000000003");
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsq::factorial_residues(m, static_cast<std::uint64_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FactorialResidues)->Arg(100000);

void BM_FactorizeFactorialPlusOne(benchmark::State& state) {
  const Natural x = fsq::factorial(static_cast<std::uint64_t>(state.range(0))) + 1;
  for (auto _ : state) benchmark::DoNotOptimize(fsq::factorize(x, fsq::FactorizeOptions{}));
}
BENCHMARK(BM_FactorizeFactorialPlusOne)->DenseRange(20, 26, 2)->Unit(benchmark::kMillisecond);

void BM_WilsonScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsq::scan_wilson(static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_WilsonScan)->Arg(10000)->Arg(30000)->Unit(benchmark::kMillisecond);

void BM_SquareDivisorScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsq::scan_square_divisors(1000, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_SquareDivisorScan)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

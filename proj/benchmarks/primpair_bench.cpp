#include <benchmark/benchmark.h>

#include "primpair/arith.hpp"
#include "primpair/certify.hpp"
#include "primpair/criteria.hpp"
#include "primpair/pairs.hpp"

namespace {

using namespace primpair;

void BM_FactorMersenne(benchmark::State& state) {
  const BigInt n = ipow(BigInt(2), static_cast<unsigned>(state.range(0))) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(arith::factorize(n));
}
BENCHMARK(BM_FactorMersenne)->Arg(36)->Arg(60)->Arg(76)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BuildField(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(1));
  const auto p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ff::FieldContext::build(p, k));
}
BENCHMARK(BM_BuildField)->Args({2, 10})->Args({2, 16})->Args({3, 10})->Unit(benchmark::kMillisecond);

void BM_Dlog(benchmark::State& state) {
  const auto ctx = ff::FieldContext::build(2, 16);
  std::uint32_t c = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.dlog(ff::FieldElement(c)));
    c = c % (ctx.q() - 1) + 1;
  }
}
BENCHMARK(BM_Dlog);

void BM_SieveSearch(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(criteria::sieve_search(2, k, 3, 2));
}
BENCHMARK(BM_SieveSearch)->Arg(24)->Arg(36)->Unit(benchmark::kMillisecond);

void BM_GammaTable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        criteria::gamma_table(static_cast<std::uint32_t>(state.range(0)), 3, 2, 100));
  }
}
BENCHMARK(BM_GammaTable)->Arg(2)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_CertifySmall(benchmark::State& state) {
  const auto ctx = ff::FieldContext::build(2, static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify::certify_k(ctx, 2, 1));
}
BENCHMARK(BM_CertifySmall)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CharacterExpansion(benchmark::State& state) {
  const auto ctx = ff::FieldContext::build(2, static_cast<unsigned>(state.range(0)));
  const auto f = polyff::RationalFunction::canonical(
      ctx, polyff::PolyQ({ctx.one(), ctx.one(), ctx.zero(), ctx.one()}),
      polyff::PolyQ({ctx.one(), ctx.one()}));
  const pairs::FreeIndicator rho(ctx, ctx.group_order());
  for (auto _ : state) benchmark::DoNotOptimize(pairs::n_f_via_characters(ctx, f, rho, rho));
}
BENCHMARK(BM_CharacterExpansion)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

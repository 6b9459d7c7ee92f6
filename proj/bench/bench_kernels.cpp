// Facewise kernels: serial loop vs OpenMP over faces, with the block
// circulant product as the slow reference.
//
//   ./bench_kernels --benchmark_filter=TProduct
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <random>

#include <benchmark/benchmark.h>

#include "tubal/circulant.hpp"
#include "tubal/eigensolvers.hpp"
#include "tubal/factorizations.hpp"
#include "tubal/tproduct.hpp"

using namespace tubal;

namespace {

DenseTensor3 randomTensor(std::size_t p, std::size_t n, std::uint64_t seed, bool real) {
  std::mt19937_64 rng(seed);
  return randomSlices(p, p, n, real, rng);
}

Execution policy(const benchmark::State& state) {
  return state.range(2) ? Execution::parallel : Execution::serial;
}

void BM_TProduct(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const DenseTensor3 a = randomTensor(p, n, 1, false), b = randomTensor(p, n, 2, false);
  const Execution exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(tProduct(a, b, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}

void BM_TProductReal(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const DenseTensor3 a = randomTensor(p, n, 1, true), b = randomTensor(p, n, 2, true);
  const Execution exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(tProduct(a, b, exec));
}

void BM_TProductBcirc(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const DenseTensor3 a = randomTensor(p, n, 1, false), b = randomTensor(p, n, 2, false);
  for (auto _ : state) benchmark::DoNotOptimize(tProductReference(a, b));
}

void BM_TQr(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const DenseTensor3 a = randomTensor(p, n, 3, false);
  const Execution exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(tQr(a, exec));
}

void BM_TSvd(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0)), n = static_cast<std::size_t>(state.range(1));
  const DenseTensor3 a = randomTensor(p, n, 4, false);
  const Execution exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(tSvd(a, exec));
}

// {rows, faces, parallel}
void facewiseArgs(benchmark::internal::Benchmark* b) {
  b->ArgNames({"p", "n", "omp"});
  for (long p : {16, 64})
    for (long n : {8, 64})
      for (long omp : {0, 1}) b->Args({p, n, omp});
}

void svdArgs(benchmark::internal::Benchmark* b) {
  b->ArgNames({"p", "n", "omp"});
  for (long n : {8, 32})
    for (long omp : {0, 1}) b->Args({16, n, omp});
}

}  // namespace

BENCHMARK(BM_TProduct)->Apply(facewiseArgs);
BENCHMARK(BM_TProductReal)->Apply(facewiseArgs);
BENCHMARK(BM_TProductBcirc)->ArgNames({"p", "n"})->Args({16, 8})->Args({16, 32})->Args({32, 16});
BENCHMARK(BM_TQr)->Apply(facewiseArgs);
BENCHMARK(BM_TSvd)->Apply(svdArgs);

BENCHMARK_MAIN();

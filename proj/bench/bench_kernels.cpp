// Serial reference against the OpenMP kernels. Set WELLROUND_THREADS to cap workers.
#include <benchmark/benchmark.h>

#include <random>

#include "wellround/exactla.hpp"
#include "wellround/parallel.hpp"

using namespace wellround;

namespace {

GramForm skewed_form(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> e(-3, 3);
  for (;;) {
    RatMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = 4 + e(rng) + 3;
      for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = e(rng);
    }
    if (is_positive_definite(a)) return GramForm(a);
  }
}

std::vector<GramForm> batch(std::size_t n, std::size_t count) {
  std::vector<GramForm> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(skewed_form(n, 1000 + i));
  return out;
}

void BM_vectors_below_serial(benchmark::State& st) {
  GramForm a = skewed_form(static_cast<std::size_t>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(vectors_below(a, 60));
}

void BM_vectors_below_parallel(benchmark::State& st) {
  GramForm a = skewed_form(static_cast<std::size_t>(st.range(0)), 7);
  for (auto _ : st) benchmark::DoNotOptimize(vectors_below_parallel(a, 60));
}

void BM_retract_batch_serial(benchmark::State& st) {
  auto forms = batch(static_cast<std::size_t>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(retract_batch_serial(forms));
}

void BM_retract_batch_parallel(benchmark::State& st) {
  auto forms = batch(static_cast<std::size_t>(st.range(0)), 32);
  for (auto _ : st) benchmark::DoNotOptimize(retract_batch(forms));
}

}  // namespace

BENCHMARK(BM_vectors_below_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vectors_below_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_retract_batch_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_retract_batch_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

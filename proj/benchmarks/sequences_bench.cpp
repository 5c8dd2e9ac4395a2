#include <benchmark/benchmark.h>

#include <random>

#include "fairseq/sampling.hpp"
#include "fairseq/sequences.hpp"

using namespace fairseq;

namespace {

FrequencyVector bench_alpha(std::size_t d) {
    std::mt19937_64 rng(derive_seed(2024, d));
    return random_frequency(d, rng);
}

}  // namespace

static void BM_TijdemanGenerate(benchmark::State& state) {
    const auto params = canonical_params(bench_alpha(static_cast<std::size_t>(state.range(0))));
    TraceOptions opt;
    opt.keep_points = false;
    for (auto _ : state) benchmark::DoNotOptimize(tijdeman_generate(params, 1'000'000, opt));
    state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_TijdemanGenerate)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_BilliardGenerate(benchmark::State& state) {
    const auto a = bench_alpha(static_cast<std::size_t>(state.range(0)));
    TraceOptions opt;
    opt.keep_points = false;
    for (auto _ : state) benchmark::DoNotOptimize(billiard_generate(SumZeroVector::zero(a.dim()), a, 1'000'000, opt));
    state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_BilliardGenerate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Balance(benchmark::State& state) {
    const auto a = bench_alpha(3);
    TraceOptions opt;
    opt.keep_points = false;
    const auto w = tijdeman_generate(canonical_params(a), 100'000, opt).letters;
    for (auto _ : state) benchmark::DoNotOptimize(balance(w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Balance)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

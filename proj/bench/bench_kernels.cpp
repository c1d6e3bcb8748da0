// Serial reference vs OpenMP kernels. The OpenMP variants take the worker
// count from the benchmark argument; results are bitwise identical.

#include <benchmark/benchmark.h>

#include "divvar/kernels.hpp"

using namespace divvar;

namespace {

constexpr u64 kHi = 2'000'001;

void BM_TauRangeSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::tau_range(3, 1, kHi));
    st.SetItemsProcessed(st.iterations() * (kHi - 1));
}

void BM_TauRangeOmp(benchmark::State& st) {
    const int w = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::tau_range(3, 1, kHi, kDefaultSegmentSize, w));
    st.SetItemsProcessed(st.iterations() * (kHi - 1));
}

void BM_ClassSumsSerial(benchmark::State& st) {
    const UnitIndex units(1009);
    const auto r = WeightedRange::smooth(1e6);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::class_sums(3, units, r));
}

void BM_ClassSumsOmp(benchmark::State& st) {
    const UnitIndex units(1009);
    const auto r = WeightedRange::smooth(1e6);
    const int w = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::class_sums(3, units, r, kDefaultSegmentSize, w));
}

struct CharacterFixture {
    WeightedRange range = WeightedRange::smooth(20'000.0);
    std::vector<double> weighted = kernels::serial::weighted_tau(3, range);
    std::vector<DirichletCharacter> chars = enumerate_characters(101);
};

void BM_CharacterSumsSerial(benchmark::State& st) {
    const CharacterFixture f;
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::character_sums(f.weighted, f.range.lo, f.chars));
}

void BM_CharacterSumsOmp(benchmark::State& st) {
    const CharacterFixture f;
    const int w = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::character_sums(f.weighted, f.range.lo, f.chars, w));
}

void BM_McSliceSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::mc_slice(3, 2.5, 1'000'000, 1));
    st.SetItemsProcessed(st.iterations() * 1'000'000);
}

void BM_McSliceOmp(benchmark::State& st) {
    const int w = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::omp::mc_slice(3, 2.5, 1'000'000, 1, w));
    st.SetItemsProcessed(st.iterations() * 1'000'000);
}

}  // namespace

BENCHMARK(BM_TauRangeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TauRangeOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassSumsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassSumsOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CharacterSumsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharacterSumsOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_McSliceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McSliceOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

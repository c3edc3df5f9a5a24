// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=LPoly
//
// Thread count comes from OMP_NUM_THREADS or the Threads argument.

#include <benchmark/benchmark.h>

#include "ffq/family.hpp"
#include "ffq/kernels.hpp"

using namespace ffq;

namespace {

const std::vector<Polynomial>& moduli(int g) {
    static std::vector<Polynomial> g1 = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    static std::vector<Polynomial> g2 = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 2));
    return g == 1 ? g1 : g2;
}

void BM_LPolySerial(benchmark::State& state) {
    const auto& m = moduli(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(serial::l_polynomials(m, LMode::full));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

void BM_LPolyOmp(benchmark::State& state) {
    const auto& m = moduli(static_cast<int>(state.range(0)));
    set_worker_count(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(omp::l_polynomials(m, LMode::full));
    set_worker_count(0);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}

void BM_FamilySerial(benchmark::State& state) {
    const auto spec = FamilySpec{FamilyKind::P, 5, static_cast<int>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(serial::family_members(spec));
}

void BM_FamilyOmp(benchmark::State& state) {
    const auto spec = FamilySpec{FamilyKind::P, 5, static_cast<int>(state.range(0))};
    set_worker_count(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(omp::family_members(spec));
    set_worker_count(0);
}

void BM_CharSumSerial(benchmark::State& state) {
    const auto& m = moduli(2);
    const Polynomial f(5, {1, 2, 0, 1});
    for (auto _ : state) benchmark::DoNotOptimize(serial::character_sum(m, f));
}

void BM_CharSumOmp(benchmark::State& state) {
    const auto& m = moduli(2);
    const Polynomial f(5, {1, 2, 0, 1});
    set_worker_count(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(omp::character_sum(m, f));
    set_worker_count(0);
}

}  // namespace

BENCHMARK(BM_LPolySerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LPolyOmp)->ArgsProduct({{1, 2}, {1, 4}})->ArgNames({"g", "threads"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilySerial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FamilyOmp)->ArgsProduct({{5, 6}, {1, 4}})->ArgNames({"n", "threads"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CharSumSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CharSumOmp)->Arg(1)->Arg(4)->ArgName("threads")->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

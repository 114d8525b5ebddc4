// Serial vs OpenMP timings of the heavier exact kernels.

#include "symprol/catalog.hpp"
#include "symprol/fedosov.hpp"
#include "symprol/realizations.hpp"

#include <benchmark/benchmark.h>

using namespace symprol;

namespace {

Exec exec_of(const benchmark::State& s)
{
    return s.range(0) ? Exec::parallel : Exec::serial;
}

void BM_ProlongSp4(benchmark::State& state)
{
    const auto h = instantiate("sp4", {});
    for (auto _ : state)
        benchmark::DoNotOptimize(prolong_chain(h, 2, exec_of(state)));
}
BENCHMARK(BM_ProlongSp4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyCatalog(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_all(WitnessGrid::standard(), exec_of(state)));
}
BENCHMARK(BM_VerifyCatalog)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BuildK1(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(build_thmK1(PlaneBase::sl2aff, 3, 1, 0, exec_of(state)));
}
BENCHMARK(BM_BuildK1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FedosovCorpus(benchmark::State& state)
{
    const auto corpus = nilpotent_corpus();
    for (auto _ : state)
        for (const auto& a : corpus)
            benchmark::DoNotOptimize(fedosov_report(a, exec_of(state)));
}
BENCHMARK(BM_FedosovCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

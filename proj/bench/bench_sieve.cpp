// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "lnsieve/sieve.hpp"

using namespace lnsieve;

namespace {

const NewformSpace& space41() {
    static const NewformSpace sp = read_snapshot(std::string(LNSIEVE_BENCH_DATA_DIR) + "/newforms_q41.json").space;
    return sp;
}

SieveConfig cfg41() {
    SieveConfig c;
    c.q = 41;
    c.p_max = 31;
    return c;
}

void BM_trace_set_serial(benchmark::State& st) {
    const PrimeIdealM P = PrimeIdealM::above(st.range(0), 97);
    for (auto _ : st) benchmark::DoNotOptimize(trace_set_serial(P));
}

void BM_trace_set_omp(benchmark::State& st) {
    const PrimeIdealM P = PrimeIdealM::above(st.range(0), 97);
    for (auto _ : st) benchmark::DoNotOptimize(trace_set(P));
}

void BM_sieve_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(run_sieve_serial(space41(), cfg41()));
}

void BM_sieve_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(run_sieve(space41(), cfg41()));
}

void BM_sweep_serial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify_listed_serial(st.range(0)));
}

void BM_sweep_omp(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(verify_listed(st.range(0)));
}

}  // namespace

// 23 is inert in Q(sqrt 97), 31 splits.
BENCHMARK(BM_trace_set_serial)->Arg(23)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_set_omp)->Arg(23)->Arg(31)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sieve_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sieve_omp)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_serial)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_omp)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

#include "hear/billiards.hpp"
#include "hear/heat_trace.hpp"
#include "hear/kernels.hpp"
#include "hear/mesh.hpp"
#include "hear/reconstruction.hpp"
#include "hear/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace hear;

namespace {

const Mesh& bench_mesh(int n) {
    static std::vector<std::pair<int, Mesh>> cache;
    for (const auto& [k, m] : cache)
        if (k == n)
            return m;
    cache.emplace_back(n, build_mesh(Triangle::from_sides(std::sqrt(2.0), 1, 1), n));
    return cache.back().second;
}

void BM_AssembleSerial(benchmark::State& st) {
    const Mesh& m = bench_mesh(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(assemble_serial(m));
}

void BM_Assemble(benchmark::State& st) {
    const Mesh& m = bench_mesh(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(assemble(m));
}

void BM_SpmvSerial(benchmark::State& st) {
    const auto sys = assemble_serial(bench_mesh(static_cast<int>(st.range(0))));
    std::vector<double> x(sys.stiffness.rows(), 1.0), y(x.size());
    for (auto _ : st) {
        spmv_serial(sys.stiffness, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_Spmv(benchmark::State& st) {
    const auto sys = assemble_serial(bench_mesh(static_cast<int>(st.range(0))));
    std::vector<double> x(sys.stiffness.rows(), 1.0), y(x.size());
    for (auto _ : st) {
        spmv(sys.stiffness, x, y);
        benchmark::DoNotOptimize(y.data());
    }
}

const Spectrum& bench_spectrum() {
    static const Spectrum s = exact_half_square_below(1.0, 1e5);
    return s;
}

void BM_HeatSumsSerial(benchmark::State& st) {
    const auto t = log_spaced(1e-4, 1e-2, static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(heat_sums_serial(bench_spectrum().values, t));
}

void BM_HeatSums(benchmark::State& st) {
    const auto t = log_spaced(1e-4, 1e-2, static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(heat_sums(bench_spectrum().values, t));
}

void BM_InjectivitySerial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(injectivity_scan_serial(static_cast<int>(st.range(0))));
}

void BM_Injectivity(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(injectivity_scan(static_cast<int>(st.range(0))));
}

void BM_DursoSerial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(durso_injectivity_scan_serial(static_cast<int>(st.range(0))));
}

void BM_Durso(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(durso_injectivity_scan(static_cast<int>(st.range(0))));
}

} // namespace

BENCHMARK(BM_AssembleSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpmvSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Spmv)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HeatSumsSerial)->Arg(32)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HeatSums)->Arg(32)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_InjectivitySerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Injectivity)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DursoSerial)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Durso)->Arg(30)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

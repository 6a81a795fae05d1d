// Serial reference vs OpenMP kernels. Run with --benchmark_filter to narrow.

#include "tfr/diffusion.hpp"
#include "tfr/imaging.hpp"
#include "tfr/kernels.hpp"
#include "tfr/random.hpp"
#include "tfr/vesselness.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using tfr::kernels::Exec;

tfr::Raster noise(int n) {
    tfr::Rng rng(42);
    tfr::Raster r(n, n);
    for (double& v : r.values()) v = rng.uniform();
    return r;
}

Exec exec_of(const benchmark::State& st) { return st.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& st) {
    st.SetLabel(st.range(1) == 0 ? "serial" : "parallel");
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

void BM_Convolve(benchmark::State& st) {
    const tfr::Raster img = noise(static_cast<int>(st.range(0)));
    std::vector<double> taps(13, 1.0 / 13.0);
    for (auto _ : st) benchmark::DoNotOptimize(tfr::kernels::convolve_separable(img, taps, taps, exec_of(st)));
    label(st);
}

void BM_DiffusionStep(benchmark::State& st) {
    const tfr::Raster img = noise(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(tfr::kernels::diffusion_step(img, 0.2, 400.0, exec_of(st)));
    label(st);
}

void BM_Diffuse(benchmark::State& st) {
    const tfr::Raster img = noise(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(tfr::diffusion::diffuse(img, {}, exec_of(st)));
    label(st);
}

void BM_Hessian(benchmark::State& st) {
    const tfr::Raster img = noise(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(tfr::imaging::hessian_at_scale(img, 2.0, exec_of(st)));
    label(st);
}

void BM_Vesselness(benchmark::State& st) {
    const tfr::Raster img = noise(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(tfr::vesselness::vesselness_multiscale(img, {}, exec_of(st)));
    label(st);
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {160, 512})
        for (int par : {0, 1}) b->Args({n, par});
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK(BM_Convolve)->Apply(sizes);
BENCHMARK(BM_DiffusionStep)->Apply(sizes);
BENCHMARK(BM_Diffuse)->Apply(sizes);
BENCHMARK(BM_Hessian)->Apply(sizes);
BENCHMARK(BM_Vesselness)->Apply(sizes);

}  // namespace

BENCHMARK_MAIN();

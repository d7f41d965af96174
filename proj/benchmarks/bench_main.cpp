#include <benchmark/benchmark.h>

#include <random>

#include "sos/contour.hpp"
#include "sos/disorder.hpp"
#include "sos/mcmc.hpp"
#include "sos/oracle.hpp"

using namespace sos;

namespace {

HeightField random_field(const Box& box, int lo, int hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<int> h(box.size());
    for (auto& v : h) v = d(rng);
    return HeightField(box, 0, std::move(h));
}

void BM_TransferMatrix(benchmark::State& state) {
    const int width = static_cast<int>(state.range(0));
    ModelParams p;
    p.beta = 3.5;
    p.alpha = 1;
    p.height_window = {-3, 3};
    const Box box = strip_box(width, 64);
    const DisorderField omega = sample(DisorderSpec::rademacher(), box, 1);
    for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(box, p, &omega).log_z);
    state.SetItemsProcessed(state.iterations() * 64);  // columns
}
BENCHMARK(BM_TransferMatrix)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExtractCylinders(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const HeightField f = random_field(Box(n, n), -2, 2, 7);
    for (auto _ : state) benchmark::DoNotOptimize(extract_cylinders(f).size());
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ExtractCylinders)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_HeatBathSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    ModelParams p;
    p.beta = 1.0;
    p.alpha = 1;
    p.h = 0.1;
    const Box box(n, n);
    const DisorderField omega = sample(DisorderSpec::gaussian(), box, 3);
    const HeatBath hb(p, omega);
    ChainState s = initial_state(box, p, 11);
    for (auto _ : state) benchmark::DoNotOptimize(hb.sweep(s));
    state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_HeatBathSweep)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_EnumerateContours(benchmark::State& state) {
    const int cap = static_cast<int>(state.range(0));
    const Box box(6, 6);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_contours(box, cap).size());
}
BENCHMARK(BM_EnumerateContours)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

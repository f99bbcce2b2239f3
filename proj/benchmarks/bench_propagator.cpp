#include <benchmark/benchmark.h>

#include "otoc/propagator.hpp"
#include "otoc/spectral.hpp"

using namespace otoc;

namespace {
const GateKernel kGate = kernel_from_gate(CanonicalGate(0.5, 0.3, 0.1));
}

static void BM_PairKernel(benchmark::State& state) {
    const int n = int(state.range(0));
    PhiVector phi = PhiVector::initial(n, n / 2);
    for (auto _ : state) {
        apply_pair_kernel(phi, kGate, n / 2, n / 2 + 1);
        benchmark::DoNotOptimize(phi.data.data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PairKernel)->Arg(16)->Arg(20)->Arg(24);

static void BM_BrickwallPeriod(benchmark::State& state) {
    const int n = int(state.range(0));
    auto proto = Protocol::brickwall(n, Boundary::pbc);
    PhiVector phi = PhiVector::initial(n, 1);
    for (auto _ : state) {
        apply_period(phi, proto, kGate);
        benchmark::DoNotOptimize(phi.data.data());
    }
    state.SetItemsProcessed(state.iterations() * n * (std::int64_t{1} << n));
}
BENCHMARK(BM_BrickwallPeriod)->Arg(16)->Arg(20);

static void BM_AveragedStep(benchmark::State& state) {
    const int n = int(state.range(0));
    auto proto = Protocol::rnn(n, Boundary::pbc);
    PhiVector phi = PhiVector::initial(n, 1);
    for (auto _ : state) {
        apply_averaged_step(phi, proto, kGate);
        benchmark::DoNotOptimize(phi.data.data());
    }
}
BENCHMARK(BM_AveragedStep)->Arg(12)->Arg(16);

BENCHMARK_MAIN();

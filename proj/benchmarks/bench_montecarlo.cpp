#include <benchmark/benchmark.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "otoc/montecarlo.hpp"

using namespace otoc;

static void BM_PtmApply(benchmark::State& state) {
    const int n = int(state.range(0));
    auto v = PauliCoeffVector::initial(n, 1);
    KeyedRng rng(7, 0, 0);
    const Eigen::Matrix4cd g =
        build_w(CanonicalGate(1, 1, 0.5)) *
        Eigen::kroneckerProduct(sample_haar_u2(rng), sample_haar_u2(rng)).eval();
    const Ptm16 r = two_qubit_ptm(g);
    for (auto _ : state) {
        apply_ptm(v, r, 3, 4);
        benchmark::DoNotOptimize(v.coeffs.data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * n)));
}
BENCHMARK(BM_PtmApply)->Arg(8)->Arg(10)->Arg(12);

static void BM_PtmBuild(benchmark::State& state) {
    KeyedRng rng(11, 0, 0);
    const Eigen::Matrix4cd w = build_w(CanonicalGate(0.7, 0.4, 0.2));
    for (auto _ : state) {
        const Eigen::Matrix4cd g =
            w * Eigen::kroneckerProduct(sample_haar_u2(rng), sample_haar_u2(rng)).eval();
        benchmark::DoNotOptimize(two_qubit_ptm(g));
    }
}
BENCHMARK(BM_PtmBuild);

BENCHMARK_MAIN();

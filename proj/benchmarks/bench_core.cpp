#include <benchmark/benchmark.h>

#include "rewrap/corruption.hpp"
#include "rewrap/estimators.hpp"
#include "rewrap/rng.hpp"
#include "rewrap/thresholding.hpp"

using namespace rewrap;

namespace {

RegressionDataset make_data(int n, int d, double alpha) {
    GenConfig cfg{n, d, 1.0, 12345};
    return generate_attacked(
        cfg, {AttackKind::kOaa, alpha, Rng::derive(12345, "attack")});
}

void BM_hard_threshold(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    const int k = n / 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hard_threshold(v, k));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_hard_threshold)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_trip_fit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RegressionDataset data = make_data(n, 20, 0.2);
    const PriorSpec prior =
        PriorSpec::isotropic(Vector::Zero(20), 0.049 * n);
    InnerConfig cfg;
    cfg.k = round_half_up(0.2 * n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trip_fit(data, prior, cfg));
    }
}
BENCHMARK(BM_trip_fit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_torrent_inner(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RegressionDataset data = make_data(n, 20, 0.2);
    InnerConfig cfg;
    cfg.keep_fraction = 0.8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(torrent_inner(data, std::nullopt, cfg));
    }
}
BENCHMARK(BM_torrent_inner)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_mest_fit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RegressionDataset data = make_data(n, 20, 0.2);
    const RhoSpec rho = RhoSpec::tukey(4.6851, 1.0);
    InnerConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mest_fit(data, rho, std::nullopt, cfg));
    }
}
BENCHMARK(BM_mest_fit)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

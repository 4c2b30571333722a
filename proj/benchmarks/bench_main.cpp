#include "fsrv/fib.hpp"
#include "fsrv/joint.hpp"
#include "fsrv/limits.hpp"
#include "fsrv/marginal.hpp"
#include "fsrv/numerics.hpp"
#include "fsrv/simulate.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

fsrv::FsrvModel exp_model() { return fsrv::FsrvModel::iid(fsrv::SeedDistribution::exponential()); }
fsrv::FsrvModel unif_model() { return fsrv::FsrvModel::iid(fsrv::SeedDistribution::uniform_unit()); }

void BM_FibExact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fsrv::fib(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_FibExact)->Arg(30)->Arg(186);

void BM_PdfClosedExp(benchmark::State& state) {
    const auto model = exp_model();
    const int n = static_cast<int>(state.range(0));
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsrv::pdf_closed(model, n, x));
        x = x < 50.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_PdfClosedExp)->Arg(4)->Arg(30);

void BM_PdfNumeric(benchmark::State& state) {
    const auto model = state.range(1) == 0 ? exp_model() : unif_model();
    const int n = static_cast<int>(state.range(0));
    const double x = 0.6 * fsrv::fib_double(n + 1) * (state.range(1) == 0 ? 1.0 : 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(fsrv::pdf_numeric(model, n, x));
}
BENCHMARK(BM_PdfNumeric)->Args({4, 0})->Args({12, 0})->Args({4, 1})->Args({12, 1});

void BM_Integrate(benchmark::State& state) {
    const fsrv::QuadratureConfig cfg{};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsrv::integrate([](double x) { return std::exp(-x) * std::sin(3.0 * x); },
                                                 0.0, 30.0, cfg));
    }
}
BENCHMARK(BM_Integrate);

void BM_LimitCdfExp(benchmark::State& state) {
    double y = -1.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fsrv::cdf_limit_exponential_closed(y));
        y = y < 5.0 ? y + 0.01 : -1.5;
    }
}
BENCHMARK(BM_LimitCdfExp);

void BM_PredictNumeric(benchmark::State& state) {
    const auto law = fsrv::JointLaw::of(4, 3);
    const auto model = exp_model();
    for (auto _ : state) benchmark::DoNotOptimize(fsrv::predict(law, model, 6.0));
}
BENCHMARK(BM_PredictNumeric);

void BM_PredictClosed(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fsrv::predict_exponential_n4_k3_closed(6.0));
}
BENCHMARK(BM_PredictClosed);

void BM_Simulate(benchmark::State& state) {
    const fsrv::SimulationConfig cfg{exp_model(), 1, static_cast<std::size_t>(state.range(0)), 30};
    const unsigned workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(fsrv::SimulationRun::execute(cfg, workers));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

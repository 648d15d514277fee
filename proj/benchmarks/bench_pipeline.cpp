#include <map>

#include <benchmark/benchmark.h>

#include "uwr/enhance.hpp"
#include "uwr/fitness.hpp"
#include "uwr/presearch.hpp"
#include "uwr/restore.hpp"
#include "uwr/synth.hpp"
#include "uwr/uwindex.hpp"

namespace {

const uwr::ImageBuf& frame(int side) {
    static std::map<int, uwr::ImageBuf> cache;
    auto it = cache.find(side);
    if (it == cache.end())
        it = cache.emplace(side, uwr::apply_water(uwr::synthetic_scene(side, side, 1),
                                                  uwr::water_preset("greenish", 1)))
                 .first;
    return it->second;
}

void BM_Restorer(benchmark::State& state) {
    const auto& img = frame(static_cast<int>(state.range(0)));
    uwr::Restorer r({1.5, 1e-3}, uwr::ClaheConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(r.restore(img));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Restorer)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_WienerUncached(benchmark::State& state) {
    const auto& img = frame(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(uwr::wiener_deconvolve(img, {1.5, 1e-3}));
}
BENCHMARK(BM_WienerUncached)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Clahe(benchmark::State& state) {
    const auto& img = frame(512);
    for (auto _ : state) benchmark::DoNotOptimize(uwr::clahe(img, uwr::ClaheConfig{}));
}
BENCHMARK(BM_Clahe)->Unit(benchmark::kMillisecond);

void BM_FitnessEval(benchmark::State& state) {
    const uwr::FrsObjective obj(frame(512), {}, {}, static_cast<int>(state.range(0)));
    double k = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(obj.evaluate({k, 1e-3}));
        k = k > 5 ? 0.5 : k * 1.1;
    }
}
BENCHMARK(BM_FitnessEval)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_UnderwaterIndex(benchmark::State& state) {
    const auto& img = frame(512);
    for (auto _ : state) benchmark::DoNotOptimize(uwr::underwater_index(img));
}
BENCHMARK(BM_UnderwaterIndex)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

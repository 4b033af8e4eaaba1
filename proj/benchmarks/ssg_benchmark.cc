#include <benchmark/benchmark.h>

#include "ssgraph/catalog.h"
#include "ssgraph/geometry.h"
#include "ssgraph/loop.h"
#include "ssgraph/spectral.h"
#include "ssgraph/ssg.h"
#include "ssgraph/systems.h"

namespace ssgraph {
namespace {

InputFamily Family(int count) {
  InputFamily f;
  f.seed = 3;
  f.count = count;
  f.omega_max = 20.0;
  return f;
}

void BM_Hilbert(benchmark::State& state) {
  const SampledSignal u = GenerateInput(Family(1), 0);
  for (auto _ : state) benchmark::DoNotOptimize(Hilbert(u, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Hilbert)->Arg(1)->Arg(2)->Arg(4);

void BM_Simulate(benchmark::State& state) {
  const SampledSignal u = GenerateInput(Family(1), 0);
  const OperatorModel plant = SecondOrderPlant(7.0);
  for (auto _ : state) benchmark::DoNotOptimize(Simulate(plant, u));
}
BENCHMARK(BM_Simulate);

void BM_EstimateSsg(benchmark::State& state) {
  const auto inputs = GenerateInputs(Family(static_cast<int>(state.range(0))));
  const OperatorModel lead = LeadFilter();
  for (auto _ : state) benchmark::DoNotOptimize(EstimateSsg(lead, inputs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateSsg)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PerimeterSeparation(benchmark::State& state) {
  const Region plant = AnalyticRegion(CatalogEntry::kSecondOrderPerimeter, 7.9);
  const Region lag = AnalyticRegion(CatalogEntry::kLagInverseHalfline);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SeparationCheck(
        plant, [&](double tau) { return lag.Scaled(-1.0 / tau); }, 1e-3, TauGrid::Default(),
        SeparationMode::kSigned));
  }
}
BENCHMARK(BM_PerimeterSeparation)->Unit(benchmark::kMillisecond);

void BM_CloudDistance(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto inputs = GenerateInputs(Family(n));
  const Region a = CloudRegion(EstimateSsg(SecondOrderPlant(7.0), inputs));
  const Region b = CloudRegion(InvertCloud(EstimateSsg(LagFilter(), inputs))).Scaled(-1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Distance(a, b));
}
BENCHMARK(BM_CloudDistance)->Arg(50)->Arg(200);

void BM_ClosedLoop(benchmark::State& state) {
  const SampledSignal w = GenerateInput(Family(1), 0);
  const OperatorModel plant = SecondOrderPlant(7.0), lag = LagFilter();
  for (auto _ : state) benchmark::DoNotOptimize(ClosedLoopSimulate(plant, lag, w, 1.0, -1));
}
BENCHMARK(BM_ClosedLoop)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ssgraph

BENCHMARK_MAIN();

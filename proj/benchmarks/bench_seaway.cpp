#include <benchmark/benchmark.h>

#include "seastate/seaway/dataset.hpp"
#include "seastate/seaway/synthesis.hpp"

using namespace seastate;

namespace {

void BM_SynthesizeRecord(benchmark::State& state) {
  seaway::SignalParams p;
  p.duration = static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        seaway::synthesize_motions({3.0, 6.0, 150.0}, seaway::kDefaultSpeed, seaway::SurrogateRao{}, p, ++seed));
  }
}
BENCHMARK(BM_SynthesizeRecord)->Arg(60)->Arg(300);

void BM_DesignStates(benchmark::State& state) {
  seaway::DatasetParams p;
  for (auto _ : state) benchmark::DoNotOptimize(seaway::design_states(p));
}
BENCHMARK(BM_DesignStates)->Unit(benchmark::kMillisecond);

}  // namespace

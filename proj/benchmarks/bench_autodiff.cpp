#include <benchmark/benchmark.h>

#include "seastate/autodiff/ops.hpp"
#include "seastate/random.hpp"

using namespace seastate;

namespace {

ad::Tensor<float> filled(ad::Shape shape, Rng& rng) {
  std::vector<float> v(ad::element_count(shape));
  for (auto& x : v) x = static_cast<float>(uniform(rng, -1.0, 1.0));
  return ad::Tensor<float>(std::move(shape), std::move(v), true);
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  auto a = filled({n, n}, rng);
  auto b = filled({n, n}, rng);
  ad::Tape<float> tape(false);
  for (auto _ : state) benchmark::DoNotOptimize(ad::matmul(tape, a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * n * n));
}
BENCHMARK(BM_Matmul)->Arg(64)->Arg(128)->Arg(256);

void BM_MatmulBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  auto a = filled({n, n}, rng);
  auto b = filled({n, n}, rng);
  for (auto _ : state) {
    ad::Tape<float> tape;
    auto loss = ad::sum(tape, ad::matmul(tape, a, b));
    tape.backward(loss);
  }
}
BENCHMARK(BM_MatmulBackward)->Arg(128);

void BM_Conv2d(benchmark::State& state) {
  Rng rng(3);
  auto x = filled({8, 1, 3, 301}, rng);
  auto k = filled({16, 1, 3, 25}, rng);
  auto bias = filled({16}, rng);
  ad::Tape<float> tape(false);
  for (auto _ : state) benchmark::DoNotOptimize(ad::conv2d_valid(tape, x, k, bias));
}
BENCHMARK(BM_Conv2d);

}  // namespace

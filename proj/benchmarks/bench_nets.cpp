#include <benchmark/benchmark.h>

#include "seastate/nets/at_nn.hpp"
#include "seastate/nets/attention.hpp"
#include "seastate/nets/cnn_reg.hpp"

using namespace seastate;

namespace {

ad::Tensor<float> filled(ad::Shape shape, Rng& rng) {
  std::vector<float> v(ad::element_count(shape));
  for (auto& x : v) x = static_cast<float>(uniform(rng, -1.0, 1.0));
  return ad::Tensor<float>(std::move(shape), std::move(v));
}

void BM_Attention(benchmark::State& state) {
  const auto tokens = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  nets::ParameterStore<float> store;
  nets::MhaConfig cfg{2, 16, static_cast<double>(tokens)};
  const auto p = nets::MhaParams<float>::create(store, "mha", cfg, rng);
  auto x = filled({8, tokens, 16}, rng);
  ad::Tape<float> tape(false);
  for (auto _ : state) benchmark::DoNotOptimize(nets::multi_head_attention(tape, x, cfg, p));
}
BENCHMARK(BM_Attention)->Arg(64)->Arg(277);

void BM_ToyAtNnTrainStep(benchmark::State& state) {
  Rng rng(2);
  nets::AtNnConfig c;
  c.signal_length = 301;
  c.token_size = 25;
  c.n_embeddings = 16;
  c.n_blocks = 1;
  c.head_widths = {32, 16, 3};
  nets::AtNn<float> model(c, rng);
  auto x = filled({32, 3, 301}, rng);
  for (auto _ : state) {
    ad::Tape<float> tape;
    auto y = model.forward(tape, x, nets::RunMode::train, rng);
    auto loss = ad::mean(tape, y);
    tape.backward(loss);
  }
}
BENCHMARK(BM_ToyAtNnTrainStep)->Unit(benchmark::kMillisecond);

void BM_CnnRegInfer(benchmark::State& state) {
  Rng rng(3);
  nets::CnnRegConfig c;
  c.signal_length = 1501;
  c.kappa = static_cast<std::size_t>(state.range(0));
  nets::CnnReg<float> model(c, rng);
  auto x = filled({8, 3, 1501}, rng);
  ad::Tape<float> tape(false);
  for (auto _ : state) benchmark::DoNotOptimize(model.forward(tape, x, nets::RunMode::infer, rng));
}
BENCHMARK(BM_CnnRegInfer)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

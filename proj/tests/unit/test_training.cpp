#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "seastate/error.hpp"
#include "seastate/nets/cnn_reg.hpp"
#include "seastate/seaway/synthesis.hpp"
#include "seastate/training/augment.hpp"
#include "seastate/training/loss.hpp"
#include "seastate/training/metrics.hpp"
#include "seastate/training/optimizer.hpp"
#include "seastate/training/samples.hpp"
#include "seastate/training/scaling.hpp"
#include "seastate/training/trainer.hpp"
#include "support/gradcheck.hpp"

using namespace seastate;
using namespace seastate::training;
using seastate::testing::random_tensor;

namespace {

SampleSet synthetic_set(std::size_t n, std::size_t length, float target, std::uint64_t seed) {
  Rng rng(seed);
  SampleSet s;
  s.length = length;
  s.inputs.resize(n * 3 * length);
  for (auto& v : s.inputs) v = static_cast<float>(uniform(rng, -1.0, 1.0));
  s.targets.assign(n * 3, target);
  return s;
}

nets::CnnRegConfig small_cnn() {
  nets::CnnRegConfig c;
  c.signal_length = 60;
  c.dropout_p = 0.0;
  return c;
}

}  // namespace

TEST_SUITE("training") {

TEST_CASE("target scaling") {
  const auto s = scale_targets({3.0, 4.0, 150.0});
  CHECK(s[0] == doctest::Approx(0.2));
  CHECK(s[1] == doctest::Approx(0.26666666666666666));
  CHECK(s[2] == doctest::Approx(0.4166666666666667));
  CHECK(scale_targets({0.0, 0.0, 0.0}) == std::array<double, 3>{0.0, 0.0, 0.0});
  const seaway::SeaState x{2.5, 7.25, 270.0};
  CHECK(inverse_scale(scale_targets(x)) == x);
}

TEST_CASE("mse loss values and gradient") {
  ad::Tape<double> tape;
  auto pred = ad::Tensor<double>({2, 3}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, true);
  auto same = ad::Tensor<double>({2, 3}, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  auto shifted = ad::Tensor<double>({2, 3}, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5});
  CHECK(mse_loss(tape, pred, same).item() == 0.0);
  auto loss = mse_loss(tape, pred, shifted);
  CHECK(loss.item() == doctest::Approx(0.01));
  tape.backward(loss);
  for (double g : pred.grad()) CHECK(g == doctest::Approx(2.0 * 0.1 / 6.0));
  CHECK_THROWS_AS(mse_loss(tape, pred, ad::Tensor<double>({3, 2}, std::vector<double>(6))),
                  ShapeError);
}

TEST_CASE("sgd step") {
  auto p = ad::Tensor<double>({2}, {1.0, -1.0}, true);
  Optimizer<double> opt({OptimizerKind::sgd, 0.005}, {p});
  opt.zero_grad();
  p.grad()[0] = 1.0;
  p.grad()[1] = 0.0;
  opt.step();
  CHECK(p[0] == doctest::Approx(0.995));
  CHECK(p[1] == -1.0);
}

TEST_CASE("adam first step moves by the learning rate") {
  auto p = ad::Tensor<double>({3}, {1.0, 1.0, 1.0}, true);
  Optimizer<double> opt({OptimizerKind::adam, 5e-4}, {p});
  opt.zero_grad();
  p.grad()[0] = 3.0;
  p.grad()[1] = -0.2;
  p.grad()[2] = 0.0;
  opt.step();
  CHECK(p[0] == doctest::Approx(1.0 - 5e-4).epsilon(1e-9));
  CHECK(p[1] == doctest::Approx(1.0 + 5e-4).epsilon(1e-9));
  CHECK(p[2] == 1.0);
  CHECK(opt.steps() == 1);
  OptimizerConfig bad;
  bad.learning_rate = -1.0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  CHECK(parse_optimizer("sgd") == OptimizerKind::sgd);
  CHECK_THROWS_AS(parse_optimizer("rmsprop"), ArgumentError);
}

TEST_CASE("augmentation preserves slices") {
  Rng rng(4);
  const std::size_t b = 3, length = 70;
  auto x = random_tensor<float>({b, 3, length}, rng);
  for (AugmentKind kind : {AugmentKind::none, AugmentKind::batch_wise, AugmentKind::row_wise}) {
    const auto mode = AugmentationMode::covering(kind, length, 16);
    CHECK(mode.n_slices == 5);
    std::vector<std::vector<std::size_t>> orders;
    const auto y = augment_batch(x, mode, rng, &orders);
    REQUIRE(y.shape() == ad::Shape{b, 3, 80});
    REQUIRE(orders.size() == b);
    for (std::size_t i = 0; i < b; ++i) {
      auto sorted = orders[i];
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == std::vector<std::size_t>{0, 1, 2, 3, 4});
      for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t k = 0; k < 5; ++k) {
          for (std::size_t j = 0; j < 16; ++j) {
            const std::size_t src = orders[i][k] * 16 + j;
            const float expect = src < length ? x[(i * 3 + c) * length + src] : 0.0f;
            CHECK(y[(i * 3 + c) * 80 + k * 16 + j] == expect);
          }
        }
      }
    }
    if (kind == AugmentKind::none) CHECK(orders[0] == std::vector<std::size_t>{0, 1, 2, 3, 4});
    if (kind == AugmentKind::batch_wise) {
      CHECK(orders[0] == orders[1]);
      CHECK(orders[1] == orders[2]);
    }
  }
  const auto cropped = crop_time(x, 50);
  CHECK(cropped.shape() == ad::Shape{b, 3, 50});
  CHECK(cropped[50] == x[70]);
  AugmentationMode short_mode{AugmentKind::row_wise, 16, 4};
  CHECK_THROWS_AS(short_mode.validate(length), ArgumentError);
}

TEST_CASE("row-wise orders differ across the batch") {
  Rng rng(5);
  auto x = random_tensor<float>({8, 3, 320}, rng);
  const auto mode = AugmentationMode::covering(AugmentKind::row_wise, 320, 32);
  std::size_t differing = 0;
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<std::vector<std::size_t>> orders;
    augment_batch(x, mode, rng, &orders);
    for (std::size_t i = 1; i < orders.size(); ++i) differing += orders[i] != orders[0];
  }
  CHECK(differing > 130);
}

TEST_CASE("splits are disjoint and cover the set") {
  SplitSpec spec;
  spec.seed = 3;
  const auto s = split_indices(101, spec);
  CHECK(s.train.size() == 70);
  CHECK(s.val.size() == 15);
  CHECK(s.test.size() == 16);
  std::set<std::size_t> all(s.train.begin(), s.train.end());
  all.insert(s.val.begin(), s.val.end());
  all.insert(s.test.begin(), s.test.end());
  CHECK(all.size() == 101);
  CHECK(split_indices(101, spec).train == s.train);
  spec.seed = 4;
  CHECK(split_indices(101, spec).train != s.train);
  SplitSpec bad{0.7, 0.2, 0.2, 0};
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("samples from records") {
  seaway::SignalParams p;
  p.duration = 4.0;
  std::vector<seaway::MotionRecord> records;
  for (std::uint64_t i = 0; i < 3; ++i) {
    records.push_back(seaway::synthesize_motions({1.0 + i, 6.0, 90.0}, seaway::kDefaultSpeed,
                                                 seaway::SurrogateRao{}, p, i));
  }
  const SampleSet set = make_samples(records);
  CHECK(set.size() == 3);
  CHECK(set.length == 21);
  CHECK(set.targets[3] == doctest::Approx(2.0 / 15.0));
  CHECK(set.inputs[21] == static_cast<float>(records[0].channels[1][0]));
  const std::vector<std::size_t> pick{2};
  CHECK(subset(set, pick).targets[0] == doctest::Approx(3.0 / 15.0));
  p.duration = 5.0;
  records.push_back(seaway::synthesize_motions({1.0, 6.0, 90.0}, seaway::kDefaultSpeed,
                                               seaway::SurrogateRao{}, p, 9));
  CHECK_THROWS_AS(make_samples(records), DataError);
}

TEST_CASE("metrics") {
  const std::vector<float> target{0.1f, 0.2f, 0.3f, 0.3f, 0.4f, 0.9f};
  const Metrics perfect = compute_metrics(target, target);
  CHECK(perfect.mse_avg == 0.0);
  CHECK(perfect.mae_avg == 0.0);
  const std::vector<float> pred{0.2f, 0.2f, 0.3f, 0.2f, 0.4f, 0.6f};
  const Metrics m = compute_metrics(pred, target);
  CHECK(m.count == 2);
  CHECK(m.mse[0] == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(m.mse[1] == doctest::Approx(0.0));
  CHECK(m.mse[2] == doctest::Approx(0.045).epsilon(1e-6));
  CHECK(m.mse_avg == doctest::Approx((m.mse[0] + m.mse[1] + m.mse[2]) / 3.0));
  CHECK(m.mae[2] == doctest::Approx(0.15).epsilon(1e-6));
  CHECK(m.mae_physical[2] == doctest::Approx(54.0).epsilon(1e-5));
  const auto json = nlohmann::json::parse(m.to_json());
  CHECK(json.size() == 8);
  for (const char* key : {"mse_hs", "mse_tz", "mse_beta", "mae_hs", "mae_tz", "mae_beta",
                          "mse_avg", "mae_avg"}) {
    CHECK(json.contains(key));
  }
  CHECK_THROWS_AS(compute_metrics(std::vector<float>{}, std::vector<float>{}), ArgumentError);
  CHECK_THROWS_AS(compute_metrics(pred, std::vector<float>{0.1f, 0.2f, 0.3f}), ShapeError);
}

TEST_CASE("mean predictor error equals the target variance") {
  SampleSet set = synthetic_set(4, 5, 0.0f, 1);
  set.targets = {0.0f, 0.1f, 0.2f, 0.2f, 0.1f, 0.4f, 0.4f, 0.1f, 0.6f, 0.6f, 0.1f, 0.8f};
  // Per-target population variances: 0.05, 0, 0.05.
  CHECK(mean_predictor_mse(set, set) == doctest::Approx(0.1 / 3.0).epsilon(1e-6));
}

TEST_CASE("learning rate zero keeps the training loss constant") {
  Rng rng(6);
  nets::CnnReg<double> model(small_cnn(), rng);
  const SampleSet tr = synthetic_set(20, 60, 0.3f, 1);
  const SampleSet va = synthetic_set(6, 60, 0.3f, 2);
  TrainConfig cfg;
  cfg.optimizer.learning_rate = 0.0;
  cfg.batch_size = 8;
  cfg.max_epochs = 4;
  const auto log = train(model, tr, va, cfg);
  REQUIRE(log.epochs.size() == 4);
  for (const auto& e : log.epochs) {
    CHECK(e.train_mse == doctest::Approx(log.epochs[0].train_mse).epsilon(1e-12));
    CHECK(e.val_mse == log.initial_val_mse);
  }
  CHECK(log.stop == StopReason::max_epochs);
}

TEST_CASE("early stopping restores the first epoch") {
  Rng rng(7);
  nets::CnnReg<double> model(small_cnn(), rng);
  // Training pulls every output towards 0.9 while validation wants 0, so the
  // validation error grows every epoch.
  const SampleSet tr = synthetic_set(16, 60, 0.9f, 1);
  const SampleSet va = synthetic_set(6, 60, 0.0f, 2);
  TrainConfig cfg;
  cfg.optimizer = {OptimizerKind::sgd, 0.02};
  cfg.batch_size = 8;
  cfg.max_epochs = 50;
  cfg.patience = 10;
  std::size_t calls = 0;
  const auto log = train(model, tr, va, cfg, [&](const EpochRecord&) { ++calls; });
  REQUIRE(log.epochs.size() == 11);
  CHECK(calls == 11);
  for (std::size_t i = 1; i < log.epochs.size(); ++i) {
    CHECK(log.epochs[i].val_mse > log.epochs[i - 1].val_mse);
  }
  CHECK(log.stop == StopReason::early_stop);
  CHECK(log.best_epoch == 1);
  CHECK(evaluate(model, va).mse_avg == doctest::Approx(log.epochs[0].val_mse).epsilon(1e-12));
  std::ostringstream csv;
  log.write_csv(csv);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
}

TEST_CASE("training is reproducible and rejects bad input") {
  const SampleSet tr = synthetic_set(12, 60, 0.3f, 1);
  const SampleSet va = synthetic_set(4, 60, 0.2f, 2);
  TrainConfig cfg;
  cfg.batch_size = 4;
  cfg.max_epochs = 3;
  cfg.augmentation = AugmentKind::row_wise;
  cfg.slice_size = 8;
  cfg.seed = 11;
  auto run = [&] {
    Rng rng(8);
    auto c = small_cnn();
    c.dropout_p = 0.25;
    nets::CnnReg<float> model(c, rng);
    return train(model, tr, va, cfg);
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.epochs.size() == b.epochs.size());
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    CHECK(a.epochs[i].train_mse == b.epochs[i].train_mse);
    CHECK(a.epochs[i].val_mse == b.epochs[i].val_mse);
  }
  Rng rng(9);
  nets::CnnReg<float> model(small_cnn(), rng);
  CHECK_THROWS_AS(train(model, tr, SampleSet{}, cfg), ArgumentError);
  CHECK_THROWS_AS(train(model, synthetic_set(4, 61, 0.1f, 1), va, cfg), ShapeError);
  cfg.batch_size = 1;
  CHECK_THROWS_AS(train(model, tr, va, cfg), ArgumentError);
}

TEST_CASE("exploding updates raise divergence") {
  Rng rng(10);
  nets::CnnReg<float> model(small_cnn(), rng);
  SampleSet tr = synthetic_set(8, 60, 0.3f, 1);
  tr.inputs[5] = std::numeric_limits<float>::quiet_NaN();
  TrainConfig cfg;
  cfg.batch_size = 4;
  CHECK_THROWS_AS(train(model, tr, synthetic_set(4, 60, 0.2f, 2), cfg), DivergenceError);
}

TEST_CASE("input gain normalizes channel rms") {
  Rng rng(11);
  nets::CnnReg<double> model(small_cnn(), rng);
  SampleSet s = synthetic_set(5, 60, 0.1f, 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < 60; ++j) s.inputs[(i * 3 + 2) * 60 + j] *= 10.0f;
  }
  fit_input_scale(model, s, 2.0);
  const auto rms = channel_rms(s);
  for (std::size_t c = 0; c < 3; ++c) CHECK(model.input_scale()[c] * rms[c] == doctest::Approx(2.0));
}

}

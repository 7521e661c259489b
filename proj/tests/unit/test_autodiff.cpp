#include "doctest.h"

#include <cmath>

#include "seastate/autodiff/ops.hpp"
#include "seastate/error.hpp"
#include "support/gradcheck.hpp"

using namespace seastate;
using namespace seastate::ad;
using seastate::testing::gradient_error;
using seastate::testing::random_tensor;

namespace {

constexpr double kTol = 1e-4;

using In = std::vector<Tensor<double>>;

}  // namespace

TEST_SUITE("autodiff") {

TEST_CASE("elementwise ops and broadcasting") {
  Rng rng(1);
  auto a = random_tensor<double>({2, 3, 4}, rng);
  auto b = random_tensor<double>({2, 3, 4}, rng);
  auto row = random_tensor<double>({4}, rng);
  auto one = random_tensor<double>({1}, rng);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return add(t, x[0], x[1]); }, {a, b}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return sub(t, x[0], x[1]); }, {a, b}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return mul(t, x[0], x[1]); }, {a, b}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return add(t, x[0], x[1]); }, {a, row}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return mul(t, x[0], x[1]); }, {a, row}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return mul(t, x[0], x[1]); }, {a, one}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return scale(t, x[0], 2.5); }, {a}, rng) < kTol);
  CHECK_THROWS_AS(add(*std::make_unique<Tape<double>>(), a, random_tensor<double>({3}, rng)), ShapeError);
}

TEST_CASE("activations and reductions") {
  Rng rng(2);
  auto a = random_tensor<double>({3, 5}, rng);
  // Keep relu inputs away from the kink.
  for (auto& v : a.values()) v = v >= 0 ? v + 0.1 : v - 0.1;
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return relu(t, x[0]); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return tanh(t, x[0]); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return sum(t, x[0]); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return mean(t, x[0]); }, {a}, rng) < kTol);
  Tape<double> tape(false);
  CHECK(mean(tape, Tensor<double>({4}, {1, 2, 3, 6})).item() == doctest::Approx(3.0));
}

TEST_CASE("shape ops") {
  Rng rng(3);
  auto a = random_tensor<double>({2, 3, 4}, rng);
  auto b = random_tensor<double>({2, 3, 2}, rng);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return reshape(t, x[0], {6, 4}); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return transpose(t, x[0]); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return concat_last(t, {x[0], x[1]}); }, {a, b}, rng) < kTol);
  Tape<double> tape(false);
  CHECK_THROWS_AS(reshape(tape, a, {5, 5}), ShapeError);
  const auto tr = transpose(tape, Tensor<double>({2, 3}, {1, 2, 3, 4, 5, 6}));
  CHECK(tr.shape() == Shape{3, 2});
  CHECK(std::vector<double>(tr.values().begin(), tr.values().end()) ==
        std::vector<double>{1, 4, 2, 5, 3, 6});
}

TEST_CASE("matmul in all supported layouts") {
  Rng rng(4);
  auto a2 = random_tensor<double>({3, 4}, rng);
  auto b2 = random_tensor<double>({4, 2}, rng);
  auto a3 = random_tensor<double>({2, 3, 4}, rng);
  auto b3 = random_tensor<double>({2, 4, 5}, rng);
  auto mm = [](Tape<double>& t, In& x) { return matmul(t, x[0], x[1]); };
  CHECK(gradient_error<double>(mm, {a2, b2}, rng) < kTol);
  CHECK(gradient_error<double>(mm, {a3, b3}, rng) < kTol);
  CHECK(gradient_error<double>(mm, {a3, b2}, rng) < kTol);
  Tape<double> tape(false);
  const auto c = matmul(tape, Tensor<double>({2, 2}, {1, 2, 3, 4}), Tensor<double>({2, 1}, {5, 6}));
  CHECK(c[0] == 17.0);
  CHECK(c[1] == 39.0);
  CHECK_THROWS_AS(matmul(tape, a2, a2), ShapeError);
}

TEST_CASE("convolution") {
  Rng rng(5);
  auto input = random_tensor<double>({2, 2, 4, 7}, rng);
  auto kernels = random_tensor<double>({3, 2, 2, 3}, rng);
  auto bias = random_tensor<double>({3}, rng);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return conv2d_valid(t, x[0], x[1], x[2]); },
                               {input, kernels, bias}, rng) < kTol);
  auto single = random_tensor<double>({2, 4, 7}, rng);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return conv2d_valid(t, x[0], x[1], x[2]); },
                               {single, kernels, bias}, rng) < kTol);
  Tape<double> tape(false);
  const auto out = conv2d_valid(tape, input, kernels, bias);
  CHECK(out.shape() == Shape{2, 3, 3, 5});
  // Hand-computed single position.
  const auto one = conv2d_valid(tape, Tensor<double>({1, 1, 3}, {1, 2, 3}),
                                Tensor<double>({1, 1, 1, 2}, {10, 1}), Tensor<double>({1}, {0.5}));
  CHECK(one.shape() == Shape{1, 1, 2});
  CHECK(one[0] == 12.5);
  CHECK(one[1] == 23.5);
}

TEST_CASE("softmax and layer norm") {
  Rng rng(6);
  auto a = random_tensor<double>({2, 3, 5}, rng, -2.0, 2.0);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return softmax_last(t, x[0]); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return layer_norm(t, x[0]); }, {a}, rng) < kTol);
  Tape<double> tape(false);
  const auto s = softmax_last(tape, Tensor<double>({2}, {1000.0, 1000.0}));
  CHECK(s[0] == doctest::Approx(0.5));
  const auto n = layer_norm(tape, Tensor<double>({2}, {1.0, 3.0}), 0.0);
  CHECK(n[0] == doctest::Approx(-1.0));
  CHECK(n[1] == doctest::Approx(1.0));
}

TEST_CASE("batch norm") {
  Rng rng(7);
  auto x = random_tensor<double>({5, 3}, rng);
  auto gamma = random_tensor<double>({3}, rng, 0.5, 1.5);
  auto beta = random_tensor<double>({3}, rng);
  auto bn = [](Tape<double>& t, In& in) {
    BatchNormStats<double> stats{Tensor<double>::zeros({3}), Tensor<double>::full({3}, 1.0)};
    return batch_norm(t, in[0], in[1], in[2], stats, Mode::train);
  };
  CHECK(gradient_error<double>(bn, {x, gamma, beta}, rng) < kTol);
  auto bn_infer = [](Tape<double>& t, In& in) {
    BatchNormStats<double> stats{Tensor<double>::full({3}, 0.2), Tensor<double>::full({3}, 2.0)};
    return batch_norm(t, in[0], in[1], in[2], stats, Mode::infer);
  };
  CHECK(gradient_error<double>(bn_infer, {x, gamma, beta}, rng) < kTol);

  BatchNormStats<double> stats{Tensor<double>::zeros({1}), Tensor<double>::full({1}, 1.0)};
  Tape<double> tape(false);
  batch_norm(tape, Tensor<double>({2, 1}, {1.0, 3.0}), Tensor<double>({1}, {1.0}),
             Tensor<double>({1}, {0.0}), stats, Mode::train);
  CHECK(stats.mean[0] == doctest::Approx(0.2));
  CHECK(stats.var[0] == doctest::Approx(1.0));
}

TEST_CASE("dropout") {
  Rng rng(8);
  auto a = random_tensor<double>({4, 6}, rng);
  auto drop = [](Tape<double>& t, In& x) {
    Rng local(99);
    return dropout(t, x[0], 0.3, Mode::train, local);
  };
  CHECK(gradient_error<double>(drop, {a}, rng) < kTol);
  Tape<double> tape(false);
  const auto ones = Tensor<double>::full({10000}, 1.0);
  Rng r(3);
  const auto out = dropout(tape, ones, 0.25, Mode::train, r);
  std::size_t zeros = 0;
  for (double v : out.values()) {
    if (v == 0.0) ++zeros;
    else CHECK(v == doctest::Approx(1.0 / 0.75));
  }
  CHECK(zeros > 2300);
  CHECK(zeros < 2700);
  const auto same = dropout(tape, ones, 0.25, Mode::infer, r);
  for (double v : same.values()) CHECK(v == 1.0);
}

TEST_CASE("pooling") {
  Rng rng(9);
  auto a = random_tensor<double>({2, 3, 10}, rng);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return pool_last(t, x[0], PoolKind::max, 3); }, {a}, rng) < kTol);
  CHECK(gradient_error<double>([](Tape<double>& t, In& x) { return pool_last(t, x[0], PoolKind::avg, 3); }, {a}, rng) < kTol);
  Tape<double> tape(false);
  const auto p = pool_last(tape, Tensor<double>({7}, {1, 5, 2, 0, -1, 3, 9}), PoolKind::max, 3);
  CHECK(p.shape() == Shape{2});
  CHECK(p[0] == 5.0);
  CHECK(p[1] == 3.0);
  const auto nan = pool_last(tape, Tensor<double>({3}, {1.0, std::nan(""), 2.0}), PoolKind::max, 3);
  CHECK(std::isnan(nan[0]));
}

TEST_CASE("backward accumulates through shared inputs") {
  Tape<double> tape;
  auto x = Tensor<double>({1}, {3.0}, true);
  auto y = mul(tape, x, x);
  auto z = add(tape, y, x);
  auto loss = sum(tape, z);
  tape.backward(loss);
  CHECK(x.grad()[0] == doctest::Approx(7.0));
}

}

TEST_SUITE("autodiff") {

TEST_CASE("batch norm examples") {
  Tape<double> tape(false);
  const auto one = Tensor<double>({2}, {1.0, 1.0});
  const auto zero = Tensor<double>({2}, {0.0, 0.0});
  BatchNormStats<double> unit{Tensor<double>::zeros({2}), Tensor<double>::full({2}, 1.0)};
  const auto x = Tensor<double>({3, 2}, {1.0, 5.0, 2.0, 5.0, 6.0, 5.0});
  const auto same = batch_norm(tape, x, one, zero, unit, Mode::infer);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(same[i] == doctest::Approx(x[i] / std::sqrt(1.0 + 1e-3)));
  const auto trained = batch_norm(tape, x, one, zero, unit, Mode::train);
  for (std::size_t r = 0; r < 3; ++r) CHECK(trained[r * 2 + 1] == 0.0);
  // Zero-initialized running statistics become (1 - momentum) x batch stats.
  BatchNormStats<double> fresh{Tensor<double>::zeros({2}), Tensor<double>::zeros({2})};
  batch_norm(tape, x, one, zero, fresh, Mode::train);
  CHECK(fresh.mean[0] == doctest::Approx(0.1 * 3.0));
  CHECK(fresh.var[0] == doctest::Approx(0.1 * 14.0 / 3.0));
  CHECK(fresh.mean[1] == doctest::Approx(0.5));
  CHECK(fresh.var[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(batch_norm(tape, Tensor<double>({1, 2}, {1.0, 2.0}), one, zero, unit, Mode::train),
                  ArgumentError);
}

TEST_CASE("dropout rejects invalid probabilities") {
  Tape<double> tape(false);
  Rng rng(1);
  const auto a = Tensor<double>::full({4}, 1.0);
  CHECK_THROWS_AS(dropout(tape, a, 1.0, Mode::train, rng), ArgumentError);
  CHECK_THROWS_AS(dropout(tape, a, -0.1, Mode::train, rng), ArgumentError);
  const auto kept = dropout(tape, a, 0.0, Mode::train, rng);
  for (double v : kept.values()) CHECK(v == 1.0);
}

}

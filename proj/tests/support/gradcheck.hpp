#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "seastate/autodiff/ops.hpp"
#include "seastate/autodiff/tensor.hpp"
#include "seastate/random.hpp"

namespace seastate::testing {

template <typename T>
using Forward = std::function<ad::Tensor<T>(ad::Tape<T>&, std::vector<ad::Tensor<T>>&)>;

template <typename T>
ad::Tensor<T> random_tensor(ad::Shape shape, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<T> v(ad::element_count(shape));
  for (auto& x : v) x = static_cast<T>(uniform(rng, lo, hi));
  return ad::Tensor<T>(std::move(shape), std::move(v), true);
}

struct GradOptions {
  double step = 1e-6;
  /// Elementwise: max |g - fd| / max(|g| + |fd|, floor). Otherwise the error
  /// is ||g - fd|| / (||g|| + ||fd||) over every probed element.
  bool elementwise = true;
  double floor = 1e-6;
  /// Probe at most this many elements per input (evenly strided); 0 = all.
  std::size_t max_per_input = 0;
};

/// Compares the tape gradient of sum(w * f(inputs)) with central
/// differences; w is a fixed random weighting of the outputs.
template <typename T>
double gradient_error(const Forward<T>& f, std::vector<ad::Tensor<T>> inputs, Rng& rng,
                      const GradOptions& opt = {}) {
  ad::Tensor<T> weights;
  auto objective = [&](ad::Tape<T>& tape) {
    ad::Tensor<T> out = f(tape, inputs);
    if (!weights.defined()) weights = random_tensor<T>(out.shape(), rng, 0.5, 1.5);
    return ad::sum(tape, ad::mul(tape, out, weights));
  };
  for (auto& t : inputs) {
    t.set_requires_grad(true);
    t.zero_grad();
  }
  {
    ad::Tape<T> tape;
    ad::Tensor<T> loss = objective(tape);
    tape.backward(loss);
  }
  double worst = 0.0, diff2 = 0.0, norm_g = 0.0, norm_fd = 0.0;
  for (auto& t : inputs) {
    const std::vector<T> grad(t.grad().begin(), t.grad().end());
    const std::size_t stride =
        opt.max_per_input == 0 ? 1 : std::max<std::size_t>(1, t.size() / opt.max_per_input);
    for (std::size_t i = 0; i < t.size(); i += stride) {
      const T saved = t[i];
      ad::Tape<T> off(false);
      t[i] = static_cast<T>(saved + opt.step);
      const double up = objective(off).item();
      t[i] = static_cast<T>(saved - opt.step);
      const double down = objective(off).item();
      t[i] = saved;
      const double fd = (up - down) / (2.0 * opt.step);
      const double g = grad[i];
      worst = std::max(worst, std::abs(g - fd) / std::max(std::abs(g) + std::abs(fd), opt.floor));
      diff2 += (g - fd) * (g - fd);
      norm_g += g * g;
      norm_fd += fd * fd;
    }
  }
  if (opt.elementwise) return worst;
  const double denom = std::sqrt(norm_g) + std::sqrt(norm_fd);
  return denom == 0.0 ? 0.0 : std::sqrt(diff2) / denom;
}

}  // namespace seastate::testing

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "seastate/autodiff/tensor.hpp"

namespace seastate::training {

enum class OptimizerKind { adam, sgd };

std::string_view optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::adam;
  double learning_rate = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

/// Updates a fixed list of tensors from their accumulated gradients.
/// SGD: p -= lr * g. ADAM: bias-corrected moments, p -= lr * m / (sqrt(v) + eps).
template <typename T>
class Optimizer {
 public:
  Optimizer(const OptimizerConfig& cfg, std::vector<ad::Tensor<T>> params);

  void step();
  void zero_grad();
  std::size_t steps() const { return steps_; }
  const OptimizerConfig& config() const { return cfg_; }

 private:
  OptimizerConfig cfg_;
  std::vector<ad::Tensor<T>> params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  std::size_t steps_ = 0;
};

extern template class Optimizer<float>;
extern template class Optimizer<double>;

}  // namespace seastate::training

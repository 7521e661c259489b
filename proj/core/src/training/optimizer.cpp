#include "seastate/training/optimizer.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "seastate/error.hpp"

namespace seastate::training {

std::string_view optimizer_name(OptimizerKind kind) {
  return kind == OptimizerKind::adam ? "adam" : "sgd";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "adam" || name == "ADAM") return OptimizerKind::adam;
  if (name == "sgd" || name == "SGD") return OptimizerKind::sgd;
  throw ArgumentError("unknown optimizer: " + std::string(name));
}

void OptimizerConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw ArgumentError("learning rate must be finite and non-negative");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0)) {
    throw ArgumentError("ADAM betas must be in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ArgumentError("ADAM epsilon must be positive");
}

template <typename T>
Optimizer<T>::Optimizer(const OptimizerConfig& cfg, std::vector<ad::Tensor<T>> params)
    : cfg_(cfg), params_(std::move(params)) {
  cfg_.validate();
  if (cfg_.kind == OptimizerKind::adam) {
    for (const auto& p : params_) {
      m_.emplace_back(p.size(), 0.0);
      v_.emplace_back(p.size(), 0.0);
    }
  }
}

template <typename T>
void Optimizer<T>::step() {
  ++steps_;
  const double lr = cfg_.learning_rate;
  if (cfg_.kind == OptimizerKind::sgd) {
    for (auto& p : params_) {
      if (!p.has_grad()) continue;
      auto v = p.values();
      const auto g = std::as_const(p).grad();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= static_cast<T>(lr * g[i]);
    }
    return;
  }
  const double b1 = cfg_.beta1, b2 = cfg_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    auto& p = params_[k];
    if (!p.has_grad()) continue;
    auto v = p.values();
    const auto g = std::as_const(p).grad();
    auto& m = m_[k];
    auto& s = v_[k];
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double gi = g[i];
      m[i] = b1 * m[i] + (1.0 - b1) * gi;
      s[i] = b2 * s[i] + (1.0 - b2) * gi * gi;
      v[i] -= static_cast<T>(lr * (m[i] / c1) / (std::sqrt(s[i] / c2) + cfg_.epsilon));
    }
  }
}

template <typename T>
void Optimizer<T>::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

template class Optimizer<float>;
template class Optimizer<double>;

}  // namespace seastate::training

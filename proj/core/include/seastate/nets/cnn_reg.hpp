#pragma once

#include <cstddef>
#include <string>

#include "seastate/nets/network.hpp"

namespace seastate::nets {

struct CnnRegConfig {
  std::size_t signal_length = 1501;
  std::size_t kappa = 1;
  std::size_t pool_window = 3;
  double dropout_p = 0.25;

  static constexpr std::size_t kConv1Filters = 48;
  static constexpr std::size_t kConv1Width = 15;
  static constexpr std::size_t kConv2Filters = 48;
  static constexpr std::size_t kConv2Width = 9;
  static constexpr std::size_t kDenseUnits = 30;

  std::size_t conv1_filters() const { return kConv1Filters * kappa; }
  std::size_t conv2_filters() const { return kConv2Filters * kappa; }
  std::size_t dense_units() const { return kDenseUnits * kappa; }
  /// Length along time after the second pooling.
  std::size_t pooled_length() const;
  void validate() const;
};

/// Convolutional baseline: two tanh convolutions with max pooling, a tanh
/// dense layer, dropout and a RELU output.
template <typename T>
class CnnReg final : public Network<T> {
 public:
  CnnReg(const CnnRegConfig& cfg, Rng& rng);

  ModelKind kind() const override { return ModelKind::cnn_reg; }
  std::size_t signal_length() const override { return cfg_.signal_length; }
  double dropout_p() const override { return cfg_.dropout_p; }
  std::string config_json() const override;
  const CnnRegConfig& config() const { return cfg_; }

  ad::Tensor<T> features(ad::Tape<T>& tape, const ad::Tensor<T>& batch) override;
  ad::Tensor<T> head(ad::Tape<T>& tape, const ad::Tensor<T>& features, RunMode mode,
                     Rng& rng) override;

 private:
  CnnRegConfig cfg_;
  Conv2d<T> conv1_;
  Conv2d<T> conv2_;
  Dense<T> dense_;
  Dense<T> out_;
};

extern template class CnnReg<float>;
extern template class CnnReg<double>;

}  // namespace seastate::nets

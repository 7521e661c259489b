#include "seastate/nets/cnn_reg.hpp"

#include "seastate/error.hpp"
#include "seastate/nets/config_io.hpp"

namespace seastate::nets {

std::size_t CnnRegConfig::pooled_length() const {
  if (signal_length < kConv1Width || pool_window == 0) return 0;
  const std::size_t first = (signal_length - kConv1Width + 1) / pool_window;
  if (first < kConv2Width) return 0;
  return (first - kConv2Width + 1) / pool_window;
}

void CnnRegConfig::validate() const {
  if (kappa < 1) throw ArgumentError("kappa must be >= 1");
  if (pool_window < 1) throw ArgumentError("pool window must be >= 1");
  if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ArgumentError("dropout_p must be in [0, 1)");
  if (pooled_length() == 0) {
    throw ShapeError("signal length " + std::to_string(signal_length) +
                     " is too short for the convolution and pooling stack");
  }
}

template <typename T>
CnnReg<T>::CnnReg(const CnnRegConfig& cfg, Rng& rng) : cfg_(cfg) {
  cfg_.validate();
  auto& store = this->store_;
  conv1_ = Conv2d<T>::create(store, "conv1", 1, cfg_.conv1_filters(), kChannels,
                             CnnRegConfig::kConv1Width, rng);
  conv2_ = Conv2d<T>::create(store, "conv2", cfg_.conv1_filters(), cfg_.conv2_filters(), 1,
                             CnnRegConfig::kConv2Width, rng);
  dense_ = Dense<T>::create(store, "dense", cfg_.conv2_filters() * cfg_.pooled_length(),
                            cfg_.dense_units(), rng);
  out_ = Dense<T>::create(store, "out", cfg_.dense_units(), kTargets, rng,
                          static_cast<T>(kOutputBiasInit), kOutputWeightGain);
}

template <typename T>
std::string CnnReg<T>::config_json() const {
  return to_json(cfg_);
}

template <typename T>
ad::Tensor<T> CnnReg<T>::features(ad::Tape<T>& tape, const ad::Tensor<T>& batch) {
  auto x = this->prepare_input(batch);
  const std::size_t b = x.dim(0);
  auto y = ad::tanh(tape, conv1_(tape, x));
  y = ad::pool_last(tape, y, ad::PoolKind::max, cfg_.pool_window);
  y = ad::tanh(tape, conv2_(tape, y));
  y = ad::pool_last(tape, y, ad::PoolKind::max, cfg_.pool_window);
  y = ad::reshape(tape, y, {b, cfg_.conv2_filters() * cfg_.pooled_length()});
  return ad::tanh(tape, dense_(tape, y));
}

template <typename T>
ad::Tensor<T> CnnReg<T>::head(ad::Tape<T>& tape, const ad::Tensor<T>& features, RunMode mode,
                              Rng& rng) {
  auto y = ad::dropout(tape, features, cfg_.dropout_p, dropout_mode(mode), rng);
  return ad::relu(tape, out_(tape, y));
}

template class CnnReg<float>;
template class CnnReg<double>;

}  // namespace seastate::nets

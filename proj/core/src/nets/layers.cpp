#include "seastate/nets/layers.hpp"

#include <cmath>

namespace seastate::nets {

PositionalEncoding::PositionalEncoding(std::size_t n_tokens, std::size_t d)
    : n_tokens_(n_tokens), d_(d), table_(n_tokens * d) {
  for (std::size_t pos = 0; pos < n_tokens; ++pos) {
    for (std::size_t c = 0; c < d; ++c) {
      const double exponent = static_cast<double>(c - c % 2) / static_cast<double>(d);
      const double angle = static_cast<double>(pos) / std::pow(10000.0, exponent);
      table_[pos * d + c] = c % 2 == 0 ? std::sin(angle) : std::cos(angle);
    }
  }
}

template <typename T>
ad::Tensor<T> PositionalEncoding::tensor() const {
  return ad::Tensor<T>({n_tokens_, d_}, std::vector<T>(table_.begin(), table_.end()));
}

template ad::Tensor<float> PositionalEncoding::tensor<float>() const;
template ad::Tensor<double> PositionalEncoding::tensor<double>() const;

template <typename T>
Dense<T> Dense<T>::create(ParameterStore<T>& store, const std::string& name, std::size_t in,
                          std::size_t out, Rng& rng, T bias_init,
                          double weight_gain) {
  Dense d;
  d.weight = store.glorot(name + ".weight", {in, out}, in, out, rng, weight_gain);
  d.bias = store.constant(name + ".bias", {out}, bias_init);
  return d;
}

template <typename T>
ad::Tensor<T> Dense<T>::operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x) const {
  return ad::add(tape, ad::matmul(tape, x, weight), bias);
}

template <typename T>
Conv2d<T> Conv2d<T>::create(ParameterStore<T>& store, const std::string& name,
                            std::size_t in_channels, std::size_t filters, std::size_t kh,
                            std::size_t kw, Rng& rng) {
  Conv2d c;
  const std::size_t receptive = kh * kw;
  c.kernels = store.glorot(name + ".kernels", {filters, in_channels, kh, kw},
                           in_channels * receptive, filters * receptive, rng);
  c.bias = store.constant(name + ".bias", {filters}, T(0));
  return c;
}

template <typename T>
ad::Tensor<T> Conv2d<T>::operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x) const {
  return ad::conv2d_valid(tape, x, kernels, bias);
}

template <typename T>
BatchNorm<T> BatchNorm<T>::create(ParameterStore<T>& store, const std::string& name,
                                  std::size_t features) {
  BatchNorm b;
  b.gamma = store.constant(name + ".gamma", {features}, T(1));
  b.beta = store.constant(name + ".beta", {features}, T(0));
  b.stats.mean = store.constant(name + ".running_mean", {features}, T(0), false);
  b.stats.var = store.constant(name + ".running_var", {features}, T(1), false);
  return b;
}

template <typename T>
ad::Tensor<T> BatchNorm<T>::operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x, RunMode mode) {
  return ad::batch_norm(tape, x, gamma, beta, stats, norm_mode(mode));
}

template struct Dense<float>;
template struct Dense<double>;
template struct Conv2d<float>;
template struct Conv2d<double>;
template struct BatchNorm<float>;
template struct BatchNorm<double>;

}  // namespace seastate::nets

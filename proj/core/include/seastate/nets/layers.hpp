#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seastate/autodiff/ops.hpp"
#include "seastate/nets/parameters.hpp"

namespace seastate::nets {

/// How a forward pass treats stochastic and stateful layers.
///   train       dropout active, batch norm uses and updates batch statistics
///   infer       deterministic
///   mc_dropout  dropout active, batch norm uses running statistics
enum class RunMode { train, infer, mc_dropout };

inline ad::Mode dropout_mode(RunMode m) {
  return m == RunMode::infer ? ad::Mode::infer : ad::Mode::train;
}
inline ad::Mode norm_mode(RunMode m) {
  return m == RunMode::train ? ad::Mode::train : ad::Mode::infer;
}

/// Sinusoidal position table, n_tokens x d.
class PositionalEncoding {
 public:
  PositionalEncoding(std::size_t n_tokens, std::size_t d);

  std::size_t n_tokens() const { return n_tokens_; }
  std::size_t d() const { return d_; }
  const std::vector<double>& table() const { return table_; }
  double at(std::size_t pos, std::size_t channel) const { return table_[pos * d_ + channel]; }

  template <typename T>
  ad::Tensor<T> tensor() const;

 private:
  std::size_t n_tokens_;
  std::size_t d_;
  std::vector<double> table_;
};

/// Fully connected layer y = x W + b, W [in x out].
template <typename T>
struct Dense {
  ad::Tensor<T> weight;
  ad::Tensor<T> bias;

  static Dense create(ParameterStore<T>& store, const std::string& name, std::size_t in,
                      std::size_t out, Rng& rng, T bias_init = T(0),
                      double weight_gain = 1.0);
  ad::Tensor<T> operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x) const;
};

/// 2-D valid convolution over [B x C x H x W].
template <typename T>
struct Conv2d {
  ad::Tensor<T> kernels;
  ad::Tensor<T> bias;

  static Conv2d create(ParameterStore<T>& store, const std::string& name, std::size_t in_channels,
                       std::size_t filters, std::size_t kh, std::size_t kw, Rng& rng);
  ad::Tensor<T> operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x) const;
};

template <typename T>
struct BatchNorm {
  ad::Tensor<T> gamma;
  ad::Tensor<T> beta;
  ad::BatchNormStats<T> stats;

  static BatchNorm create(ParameterStore<T>& store, const std::string& name, std::size_t features);
  ad::Tensor<T> operator()(ad::Tape<T>& tape, const ad::Tensor<T>& x, RunMode mode);
};

}  // namespace seastate::nets

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seastate/nets/layers.hpp"

namespace seastate::nets {

struct MhaConfig {
  std::size_t n_heads = 2;
  std::size_t d_model = 128;
  /// The softmax logits are divided by sqrt(d_k).
  double d_k = 1377.0;

  std::size_t head_width() const { return d_model / n_heads; }
  void validate() const;
};

/// Per-head projections W_q, W_k, W_v [d_model x head_width] and the output
/// projection W_l [d_model x d_model]. No biases.
template <typename T>
struct MhaParams {
  std::vector<ad::Tensor<T>> wq, wk, wv;
  ad::Tensor<T> wl;

  static MhaParams create(ParameterStore<T>& store, const std::string& name, const MhaConfig& cfg,
                          Rng& rng);
};

/// Self-attention over x [tokens x d_model] or [batch x tokens x d_model].
/// When `weights` is non-null it receives each head's softmax matrix.
template <typename T>
ad::Tensor<T> multi_head_attention(ad::Tape<T>& tape, const ad::Tensor<T>& x, const MhaConfig& cfg,
                                   const MhaParams<T>& params,
                                   std::vector<ad::Tensor<T>>* weights = nullptr);

template <typename T>
struct AttentionBlockParams {
  MhaParams<T> first;
  MhaParams<T> second;

  static AttentionBlockParams create(ParameterStore<T>& store, const std::string& name,
                                     const MhaConfig& cfg, Rng& rng);
};

/// y1 = layer_norm(x + mha1(x)); returns layer_norm(y1 + mha2(y1)).
template <typename T>
ad::Tensor<T> attention_block(ad::Tape<T>& tape, const ad::Tensor<T>& x, const MhaConfig& cfg,
                              const AttentionBlockParams<T>& params);

}  // namespace seastate::nets

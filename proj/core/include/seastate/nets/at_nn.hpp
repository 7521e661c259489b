#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seastate/nets/attention.hpp"
#include "seastate/nets/network.hpp"

namespace seastate::nets {

struct AtNnConfig {
  std::size_t signal_length = 1501;
  std::size_t token_size = 125;
  std::size_t n_embeddings = 128;
  std::size_t n_blocks = 2;
  /// d_model is always n_embeddings.
  MhaConfig mha{};
  /// Use the token count as d_k instead of mha.d_k.
  bool d_k_from_tokens = true;
  std::vector<std::size_t> head_widths{128, 64, 3};
  double dropout_p = 0.1;

  std::size_t n_tokens() const { return signal_length - token_size + 1; }
  std::size_t flat_length() const { return n_tokens() * n_embeddings; }
  MhaConfig resolved_mha() const;
  void validate() const;
};

/// The attention regressor: a 3 x token_size convolution embeds each window
/// position, positional encoding is added, attention blocks mix the tokens
/// and a dense head with batch norm regresses the three targets.
template <typename T>
class AtNn final : public Network<T> {
 public:
  AtNn(const AtNnConfig& cfg, Rng& rng);

  ModelKind kind() const override { return ModelKind::at_nn; }
  std::size_t signal_length() const override { return cfg_.signal_length; }
  double dropout_p() const override { return cfg_.dropout_p; }
  std::string config_json() const override;
  const AtNnConfig& config() const { return cfg_; }

  /// Token map [batch x tokens x n_embeddings] before positional encoding.
  ad::Tensor<T> tokens(ad::Tape<T>& tape, const ad::Tensor<T>& batch) const;
  /// Attention output flattened to [batch x tokens * n_embeddings].
  ad::Tensor<T> flattened(ad::Tape<T>& tape, const ad::Tensor<T>& batch) const;

  ad::Tensor<T> features(ad::Tape<T>& tape, const ad::Tensor<T>& batch) override;
  ad::Tensor<T> head(ad::Tape<T>& tape, const ad::Tensor<T>& features, RunMode mode,
                     Rng& rng) override;

 private:
  AtNnConfig cfg_;
  MhaConfig mha_;
  Conv2d<T> embed_;
  ad::Tensor<T> position_;
  std::vector<AttentionBlockParams<T>> blocks_;
  std::vector<Dense<T>> dense_;
  std::vector<BatchNorm<T>> norms_;
};

extern template class AtNn<float>;
extern template class AtNn<double>;

}  // namespace seastate::nets

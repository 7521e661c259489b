#include "seastate/nets/at_nn.hpp"

#include "seastate/error.hpp"
#include "seastate/nets/config_io.hpp"

namespace seastate::nets {

MhaConfig AtNnConfig::resolved_mha() const {
  MhaConfig m = mha;
  m.d_model = n_embeddings;
  if (d_k_from_tokens) m.d_k = static_cast<double>(n_tokens());
  return m;
}

void AtNnConfig::validate() const {
  if (token_size == 0 || token_size > signal_length) {
    throw ShapeError("token size " + std::to_string(token_size) + " does not fit signal length " +
                     std::to_string(signal_length));
  }
  if (n_embeddings == 0) throw ArgumentError("n_embeddings must be positive");
  if (head_widths.empty() || head_widths.back() != kTargets) {
    throw ArgumentError("head widths must end in 3");
  }
  for (auto w : head_widths) {
    if (w == 0) throw ArgumentError("head widths must be positive");
  }
  if (!(dropout_p >= 0.0 && dropout_p < 1.0)) throw ArgumentError("dropout_p must be in [0, 1)");
  resolved_mha().validate();
}

template <typename T>
AtNn<T>::AtNn(const AtNnConfig& cfg, Rng& rng) : cfg_(cfg) {
  cfg_.validate();
  mha_ = cfg_.resolved_mha();
  auto& store = this->store_;
  embed_ = Conv2d<T>::create(store, "embed", 1, cfg_.n_embeddings, kChannels, cfg_.token_size, rng);
  position_ = PositionalEncoding(cfg_.n_tokens(), cfg_.n_embeddings).tensor<T>();
  for (std::size_t i = 0; i < cfg_.n_blocks; ++i) {
    blocks_.push_back(
        AttentionBlockParams<T>::create(store, "block" + std::to_string(i), mha_, rng));
  }
  std::size_t in = cfg_.flat_length();
  for (std::size_t i = 0; i < cfg_.head_widths.size(); ++i) {
    const bool last = i + 1 == cfg_.head_widths.size();
    const std::size_t out = cfg_.head_widths[i];
    dense_.push_back(Dense<T>::create(store, "dense" + std::to_string(i), in, out, rng,
                                      last ? static_cast<T>(kOutputBiasInit) : T(0),
                                      last ? kOutputWeightGain : 1.0));
    if (!last) norms_.push_back(BatchNorm<T>::create(store, "norm" + std::to_string(i), out));
    in = out;
  }
}

template <typename T>
std::string AtNn<T>::config_json() const {
  return to_json(cfg_);
}

template <typename T>
ad::Tensor<T> AtNn<T>::tokens(ad::Tape<T>& tape, const ad::Tensor<T>& batch) const {
  auto x = this->prepare_input(batch);
  const std::size_t b = x.dim(0);
  auto maps = embed_(tape, x);  // [b x E x 1 x tokens]
  maps = ad::reshape(tape, maps, {b, cfg_.n_embeddings, cfg_.n_tokens()});
  return ad::transpose(tape, maps);
}

template <typename T>
ad::Tensor<T> AtNn<T>::flattened(ad::Tape<T>& tape, const ad::Tensor<T>& batch) const {
  auto y = ad::add(tape, tokens(tape, batch), position_);
  for (const auto& block : blocks_) y = attention_block(tape, y, mha_, block);
  return ad::reshape(tape, y, {batch.dim(0), cfg_.flat_length()});
}

template <typename T>
ad::Tensor<T> AtNn<T>::features(ad::Tape<T>& tape, const ad::Tensor<T>& batch) {
  auto y = flattened(tape, batch);
  y = dense_.front()(tape, y);
  return dense_.size() > 1 ? ad::relu(tape, y) : y;
}

template <typename T>
ad::Tensor<T> AtNn<T>::head(ad::Tape<T>& tape, const ad::Tensor<T>& features, RunMode mode,
                            Rng& rng) {
  auto y = features;
  for (std::size_t i = 1; i <= norms_.size(); ++i) {
    y = ad::dropout(tape, y, cfg_.dropout_p, dropout_mode(mode), rng);
    y = norms_[i - 1](tape, y, mode);
    y = dense_[i](tape, y);
    if (i < norms_.size()) y = ad::relu(tape, y);
  }
  return ad::relu(tape, y);
}

template class AtNn<float>;
template class AtNn<double>;

}  // namespace seastate::nets

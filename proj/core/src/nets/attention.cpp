#include "seastate/nets/attention.hpp"

#include <cmath>

#include "seastate/error.hpp"

namespace seastate::nets {

void MhaConfig::validate() const {
  if (n_heads == 0 || d_model == 0) throw ArgumentError("attention needs heads and channels");
  if (d_model % n_heads != 0) {
    throw ArgumentError("d_model " + std::to_string(d_model) + " is not divisible by " +
                        std::to_string(n_heads) + " heads");
  }
  if (!(d_k > 0.0) || !std::isfinite(d_k)) throw ArgumentError("d_k must be positive");
}

template <typename T>
MhaParams<T> MhaParams<T>::create(ParameterStore<T>& store, const std::string& name,
                                  const MhaConfig& cfg, Rng& rng) {
  cfg.validate();
  MhaParams p;
  const std::size_t d = cfg.d_model;
  const std::size_t w = cfg.head_width();
  for (std::size_t h = 0; h < cfg.n_heads; ++h) {
    const std::string prefix = name + ".head" + std::to_string(h);
    p.wq.push_back(store.glorot(prefix + ".wq", {d, w}, d, w, rng));
    p.wk.push_back(store.glorot(prefix + ".wk", {d, w}, d, w, rng));
    p.wv.push_back(store.glorot(prefix + ".wv", {d, w}, d, w, rng));
  }
  p.wl = store.glorot(name + ".wl", {d, d}, d, d, rng);
  return p;
}

template <typename T>
ad::Tensor<T> multi_head_attention(ad::Tape<T>& tape, const ad::Tensor<T>& x, const MhaConfig& cfg,
                                   const MhaParams<T>& params,
                                   std::vector<ad::Tensor<T>>* weights) {
  cfg.validate();
  if ((x.rank() != 2 && x.rank() != 3) || x.shape().back() != cfg.d_model) {
    throw ShapeError("attention input " + ad::shape_string(x.shape()) + " does not end in d_model " +
                     std::to_string(cfg.d_model));
  }
  if (params.wq.size() != cfg.n_heads || params.wk.size() != cfg.n_heads ||
      params.wv.size() != cfg.n_heads) {
    throw ShapeError("attention parameters do not match the head count");
  }
  const T inv_scale = static_cast<T>(1.0 / std::sqrt(cfg.d_k));
  std::vector<ad::Tensor<T>> heads;
  heads.reserve(cfg.n_heads);
  for (std::size_t h = 0; h < cfg.n_heads; ++h) {
    auto q = ad::matmul(tape, x, params.wq[h]);
    auto k = ad::matmul(tape, x, params.wk[h]);
    auto v = ad::matmul(tape, x, params.wv[h]);
    auto logits = ad::scale(tape, ad::matmul(tape, q, ad::transpose(tape, k)), inv_scale);
    auto attn = ad::softmax_last(tape, logits);
    if (weights) weights->push_back(attn);
    heads.push_back(ad::matmul(tape, attn, v));
  }
  auto joined = heads.size() == 1 ? heads.front() : ad::concat_last(tape, heads);
  return ad::matmul(tape, joined, params.wl);
}

template <typename T>
AttentionBlockParams<T> AttentionBlockParams<T>::create(ParameterStore<T>& store,
                                                        const std::string& name,
                                                        const MhaConfig& cfg, Rng& rng) {
  AttentionBlockParams p;
  p.first = MhaParams<T>::create(store, name + ".mha1", cfg, rng);
  p.second = MhaParams<T>::create(store, name + ".mha2", cfg, rng);
  return p;
}

template <typename T>
ad::Tensor<T> attention_block(ad::Tape<T>& tape, const ad::Tensor<T>& x, const MhaConfig& cfg,
                              const AttentionBlockParams<T>& params) {
  auto y1 = ad::layer_norm(tape, ad::add(tape, x, multi_head_attention(tape, x, cfg, params.first)));
  return ad::layer_norm(tape, ad::add(tape, y1, multi_head_attention(tape, y1, cfg, params.second)));
}

#define SEASTATE_INSTANTIATE_ATTENTION(T)                                                        \
  template struct MhaParams<T>;                                                                  \
  template struct AttentionBlockParams<T>;                                                       \
  template ad::Tensor<T> multi_head_attention(ad::Tape<T>&, const ad::Tensor<T>&,                \
                                              const MhaConfig&, const MhaParams<T>&,             \
                                              std::vector<ad::Tensor<T>>*);                      \
  template ad::Tensor<T> attention_block(ad::Tape<T>&, const ad::Tensor<T>&, const MhaConfig&,   \
                                         const AttentionBlockParams<T>&);

SEASTATE_INSTANTIATE_ATTENTION(float)
SEASTATE_INSTANTIATE_ATTENTION(double)

#undef SEASTATE_INSTANTIATE_ATTENTION

}  // namespace seastate::nets

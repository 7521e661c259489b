#include "seastate/nets/network.hpp"

#include "seastate/error.hpp"

namespace seastate::nets {

std::string_view kind_name(ModelKind kind) {
  return kind == ModelKind::at_nn ? "at_nn" : "cnn_reg";
}

ModelKind parse_kind(std::string_view name) {
  if (name == "at_nn") return ModelKind::at_nn;
  if (name == "cnn_reg") return ModelKind::cnn_reg;
  throw ArgumentError("unknown model kind: " + std::string(name));
}

template <typename T>
ad::Tensor<T> Network<T>::prepare_input(const ad::Tensor<T>& batch) const {
  const std::size_t length = signal_length();
  if (batch.rank() != 3 || batch.dim(1) != kChannels || batch.dim(2) != length) {
    throw ShapeError("expected input [batch x 3 x " + std::to_string(length) + "], got " +
                     ad::shape_string(batch.shape()));
  }
  const std::size_t b = batch.dim(0);
  std::vector<T> v(batch.values().begin(), batch.values().end());
  const auto s = input_scale_.values();
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t c = 0; c < kChannels; ++c) {
      T* row = v.data() + (i * kChannels + c) * length;
      for (std::size_t t = 0; t < length; ++t) row[t] *= s[c];
    }
  }
  return ad::Tensor<T>({b, 1, kChannels, length}, std::move(v));
}

template class Network<float>;
template class Network<double>;

}  // namespace seastate::nets

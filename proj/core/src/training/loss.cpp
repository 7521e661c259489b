#include "seastate/training/loss.hpp"

#include "seastate/error.hpp"

namespace seastate::training {

template <typename T>
ad::Tensor<T> mse_loss(ad::Tape<T>& tape, const ad::Tensor<T>& pred, const ad::Tensor<T>& target) {
  if (pred.shape() != target.shape()) {
    throw ShapeError("loss shapes differ: " + ad::shape_string(pred.shape()) + " vs " +
                     ad::shape_string(target.shape()));
  }
  auto diff = ad::sub(tape, pred, target);
  return ad::mean(tape, ad::mul(tape, diff, diff));
}

template ad::Tensor<float> mse_loss(ad::Tape<float>&, const ad::Tensor<float>&,
                                    const ad::Tensor<float>&);
template ad::Tensor<double> mse_loss(ad::Tape<double>&, const ad::Tensor<double>&,
                                     const ad::Tensor<double>&);

}  // namespace seastate::training

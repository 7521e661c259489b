#pragma once

#include "seastate/autodiff/ops.hpp"

namespace seastate::training {

/// Mean over all entries of (pred - target)^2; shapes must match.
template <typename T>
ad::Tensor<T> mse_loss(ad::Tape<T>& tape, const ad::Tensor<T>& pred, const ad::Tensor<T>& target);

}  // namespace seastate::training

#pragma once

#include <cstddef>
#include <vector>

#include "seastate/autodiff/tensor.hpp"
#include "seastate/random.hpp"

// Differentiable operations. Every op takes the tape it records on; when the
// tape is not recording, or no input requires grad, the op only evaluates.

namespace seastate::ad {

enum class Mode { train, infer };

// Elementwise arithmetic. `b` may have the same shape as `a`, be a single
// element, or match a trailing suffix of a's shape (broadcast over the
// leading axes).
template <typename T> Tensor<T> add(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);
template <typename T> Tensor<T> sub(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);
template <typename T> Tensor<T> mul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);
template <typename T> Tensor<T> scale(Tape<T>& tape, const Tensor<T>& a, T factor);
template <typename T> Tensor<T> relu(Tape<T>& tape, const Tensor<T>& a);
template <typename T> Tensor<T> tanh(Tape<T>& tape, const Tensor<T>& a);

template <typename T> Tensor<T> sum(Tape<T>& tape, const Tensor<T>& a);
template <typename T> Tensor<T> mean(Tape<T>& tape, const Tensor<T>& a);

/// Copy with a new shape of equal element count.
template <typename T> Tensor<T> reshape(Tape<T>& tape, const Tensor<T>& a, Shape shape);

/// Swaps the last two axes of a rank-2 or rank-3 tensor.
template <typename T> Tensor<T> transpose(Tape<T>& tape, const Tensor<T>& a);

/// Concatenates along the last axis; leading extents must agree.
template <typename T>
Tensor<T> concat_last(Tape<T>& tape, const std::vector<Tensor<T>>& parts);

/// [m x k] . [k x n], [b x m x k] . [b x k x n], or [b x m x k] . [k x n].
template <typename T> Tensor<T> matmul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b);

/// Stride-1 "valid" cross-correlation. input [C x H x W] or [B x C x H x W],
/// kernels [F x C x kh x kw], bias [F]; output [(B x) F x (H-kh+1) x (W-kw+1)].
template <typename T>
Tensor<T> conv2d_valid(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& kernels,
                       const Tensor<T>& bias);

/// Softmax over the last axis with max subtraction.
template <typename T> Tensor<T> softmax_last(Tape<T>& tape, const Tensor<T>& a);

/// (x - mean) / sqrt(var + eps) over the last axis, population variance, no
/// affine terms. The last extent must be >= 2.
template <typename T>
Tensor<T> layer_norm(Tape<T>& tape, const Tensor<T>& a, T eps = T(1e-5));

/// Running statistics of a batch-norm layer; not trained by gradient.
template <typename T>
struct BatchNormStats {
  Tensor<T> mean;
  Tensor<T> var;
};

/// Batch normalization over rows of x [batch x features] with learned
/// gamma/beta [features]. Train mode normalizes with batch statistics
/// (population variance) and updates running = momentum * running +
/// (1 - momentum) * batch; infer mode uses the running statistics.
template <typename T>
Tensor<T> batch_norm(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& gamma,
                     const Tensor<T>& beta, BatchNormStats<T>& stats, Mode mode,
                     T momentum = T(0.9), T eps = T(1e-3));

/// Inverted dropout: in train mode each element is zeroed with probability p
/// and survivors are scaled by 1 / (1 - p). Identity in infer mode.
template <typename T>
Tensor<T> dropout(Tape<T>& tape, const Tensor<T>& a, double p, Mode mode, Rng& rng);

enum class PoolKind { max, avg };

/// Non-overlapping pooling along the last axis; the trailing remainder is
/// dropped.
template <typename T>
Tensor<T> pool_last(Tape<T>& tape, const Tensor<T>& a, PoolKind kind, std::size_t window);

}  // namespace seastate::ad

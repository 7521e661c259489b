#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "seastate/autodiff/tensor.hpp"
#include "seastate/random.hpp"

namespace seastate::training {

enum class AugmentKind { none, batch_wise, row_wise };

std::string_view augment_kind_name(AugmentKind kind);
AugmentKind parse_augment_kind(std::string_view name);

struct AugmentationMode {
  AugmentKind kind = AugmentKind::none;
  std::size_t slice_size = 32;
  std::size_t n_slices = 47;

  std::size_t padded_length() const { return slice_size * n_slices; }
  /// Throws ArgumentError unless slice_size >= 1 and the slices cover
  /// `length` samples.
  void validate(std::size_t length) const;
  /// Smallest slice count covering `length` samples.
  static AugmentationMode covering(AugmentKind kind, std::size_t length, std::size_t slice_size = 32);
};

/// Zero-pads [b x 3 x L] along time to k * s samples, cuts it into k slices
/// of s samples and reorders the slices: one permutation for the whole batch
/// (batch_wise) or one per sample shared by its channels (row_wise).
/// `orders`, when given, receives the slice order used for each sample.
template <typename T>
ad::Tensor<T> augment_batch(const ad::Tensor<T>& batch, const AugmentationMode& mode, Rng& rng,
                            std::vector<std::vector<std::size_t>>* orders = nullptr);

/// Keeps the first `length` samples of the last axis of [b x c x L].
template <typename T>
ad::Tensor<T> crop_time(const ad::Tensor<T>& batch, std::size_t length);

}  // namespace seastate::training

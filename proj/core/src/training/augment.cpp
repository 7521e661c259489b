#include "seastate/training/augment.hpp"

#include <algorithm>
#include <numeric>

#include "seastate/error.hpp"

namespace seastate::training {

std::string_view augment_kind_name(AugmentKind kind) {
  switch (kind) {
    case AugmentKind::batch_wise: return "batch_wise";
    case AugmentKind::row_wise: return "row_wise";
    default: return "none";
  }
}

AugmentKind parse_augment_kind(std::string_view name) {
  if (name == "none") return AugmentKind::none;
  if (name == "batch_wise") return AugmentKind::batch_wise;
  if (name == "row_wise") return AugmentKind::row_wise;
  throw ArgumentError("unknown augmentation kind: " + std::string(name));
}

void AugmentationMode::validate(std::size_t length) const {
  if (slice_size < 1) throw ArgumentError("slice size must be >= 1");
  if (padded_length() < length) {
    throw ArgumentError(std::to_string(n_slices) + " slices of " + std::to_string(slice_size) +
                        " do not cover " + std::to_string(length) + " samples");
  }
}

AugmentationMode AugmentationMode::covering(AugmentKind kind, std::size_t length,
                                            std::size_t slice_size) {
  if (slice_size < 1) throw ArgumentError("slice size must be >= 1");
  return {kind, slice_size, (length + slice_size - 1) / slice_size};
}

template <typename T>
ad::Tensor<T> augment_batch(const ad::Tensor<T>& batch, const AugmentationMode& mode, Rng& rng,
                            std::vector<std::vector<std::size_t>>* orders) {
  if (batch.rank() != 3) throw ShapeError("augmentation expects [batch x channels x time]");
  const std::size_t b = batch.dim(0), c = batch.dim(1), length = batch.dim(2);
  mode.validate(length);
  const std::size_t s = mode.slice_size, k = mode.n_slices, padded = mode.padded_length();

  std::vector<std::size_t> identity(k);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::size_t> shared =
      mode.kind == AugmentKind::batch_wise ? random_permutation(rng, k) : identity;

  std::vector<T> out(b * c * padded, T(0));
  const auto in = batch.values();
  if (orders) orders->clear();
  for (std::size_t i = 0; i < b; ++i) {
    const auto order = mode.kind == AugmentKind::row_wise ? random_permutation(rng, k) : shared;
    for (std::size_t ch = 0; ch < c; ++ch) {
      const T* src = in.data() + (i * c + ch) * length;
      T* dst = out.data() + (i * c + ch) * padded;
      for (std::size_t slot = 0; slot < k; ++slot) {
        const std::size_t from = order[slot] * s;
        const std::size_t end = std::min(from + s, length);
        if (from < end) std::copy(src + from, src + end, dst + slot * s);
      }
    }
    if (orders) orders->push_back(order);
  }
  return ad::Tensor<T>({b, c, padded}, std::move(out));
}

template <typename T>
ad::Tensor<T> crop_time(const ad::Tensor<T>& batch, std::size_t length) {
  if (batch.rank() != 3 || batch.dim(2) < length) throw ShapeError("cannot crop to a longer length");
  const std::size_t rows = batch.dim(0) * batch.dim(1), width = batch.dim(2);
  if (width == length) return batch;
  std::vector<T> out(rows * length);
  const auto in = batch.values();
  for (std::size_t r = 0; r < rows; ++r) {
    std::copy_n(in.data() + r * width, length, out.data() + r * length);
  }
  return ad::Tensor<T>({batch.dim(0), batch.dim(1), length}, std::move(out));
}

template ad::Tensor<float> augment_batch(const ad::Tensor<float>&, const AugmentationMode&, Rng&,
                                         std::vector<std::vector<std::size_t>>*);
template ad::Tensor<double> augment_batch(const ad::Tensor<double>&, const AugmentationMode&, Rng&,
                                          std::vector<std::vector<std::size_t>>*);
template ad::Tensor<float> crop_time(const ad::Tensor<float>&, std::size_t);
template ad::Tensor<double> crop_time(const ad::Tensor<double>&, std::size_t);

}  // namespace seastate::training

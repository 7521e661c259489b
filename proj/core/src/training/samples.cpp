#include "seastate/training/samples.hpp"

#include <cmath>

#include "seastate/error.hpp"
#include "seastate/random.hpp"
#include "seastate/training/scaling.hpp"

namespace seastate::training {

SampleSet make_samples(const std::vector<seaway::MotionRecord>& records) {
  SampleSet set;
  if (records.empty()) return set;
  set.length = records.front().n_samples();
  set.inputs.reserve(records.size() * 3 * set.length);
  set.targets.reserve(records.size() * 3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    for (const auto& ch : r.channels) {
      if (ch.size() != set.length) {
        throw DataError("record " + std::to_string(i) + " has " + std::to_string(ch.size()) +
                        " samples, expected " + std::to_string(set.length));
      }
      set.inputs.insert(set.inputs.end(), ch.begin(), ch.end());
    }
    for (double t : scale_targets(r.label)) set.targets.push_back(static_cast<float>(t));
  }
  return set;
}

SampleSet subset(const SampleSet& set, std::span<const std::size_t> indices) {
  SampleSet out;
  out.length = set.length;
  const std::size_t row = 3 * set.length;
  out.inputs.reserve(indices.size() * row);
  out.targets.reserve(indices.size() * 3);
  for (auto i : indices) {
    if (i >= set.size()) throw ArgumentError("sample index out of range");
    out.inputs.insert(out.inputs.end(), set.inputs.begin() + static_cast<std::ptrdiff_t>(i * row),
                      set.inputs.begin() + static_cast<std::ptrdiff_t>((i + 1) * row));
    out.targets.insert(out.targets.end(), set.targets.begin() + static_cast<std::ptrdiff_t>(i * 3),
                       set.targets.begin() + static_cast<std::ptrdiff_t>(i * 3 + 3));
  }
  return out;
}

template <typename T>
ad::Tensor<T> batch_inputs(const SampleSet& set, std::span<const std::size_t> indices) {
  const std::size_t row = 3 * set.length;
  std::vector<T> v;
  v.reserve(indices.size() * row);
  for (auto i : indices) {
    if (i >= set.size()) throw ArgumentError("sample index out of range");
    const float* src = set.inputs.data() + i * row;
    v.insert(v.end(), src, src + row);
  }
  return ad::Tensor<T>({indices.size(), 3, set.length}, std::move(v));
}

template <typename T>
ad::Tensor<T> batch_targets(const SampleSet& set, std::span<const std::size_t> indices) {
  std::vector<T> v;
  v.reserve(indices.size() * 3);
  for (auto i : indices) {
    if (i >= set.size()) throw ArgumentError("sample index out of range");
    v.insert(v.end(), set.targets.begin() + static_cast<std::ptrdiff_t>(i * 3),
             set.targets.begin() + static_cast<std::ptrdiff_t>(i * 3 + 3));
  }
  return ad::Tensor<T>({indices.size(), 3}, std::move(v));
}

template ad::Tensor<float> batch_inputs<float>(const SampleSet&, std::span<const std::size_t>);
template ad::Tensor<double> batch_inputs<double>(const SampleSet&, std::span<const std::size_t>);
template ad::Tensor<float> batch_targets<float>(const SampleSet&, std::span<const std::size_t>);
template ad::Tensor<double> batch_targets<double>(const SampleSet&, std::span<const std::size_t>);

std::array<double, 3> channel_rms(const SampleSet& set) {
  std::array<double, 3> acc{};
  const std::size_t n = set.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < 3; ++c) {
      const float* row = set.inputs.data() + (i * 3 + c) * set.length;
      for (std::size_t t = 0; t < set.length; ++t) acc[c] += static_cast<double>(row[t]) * row[t];
    }
  }
  for (auto& a : acc) a = n == 0 ? 0.0 : std::sqrt(a / static_cast<double>(n * set.length));
  return acc;
}

void SplitSpec::validate() const {
  if (!(train > 0.0 && val > 0.0 && test > 0.0)) {
    throw ArgumentError("split fractions must be positive");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) throw ArgumentError("split fractions must sum to 1");
}

SplitIndices split_indices(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, 0));
  const auto order = random_permutation(rng, n);
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.train));
  const auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(n) * spec.val));
  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                 order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  return out;
}

}  // namespace seastate::training

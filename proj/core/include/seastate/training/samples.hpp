#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seastate/autodiff/tensor.hpp"
#include "seastate/seaway/synthesis.hpp"

namespace seastate::training {

/// Model-ready view of a dataset: motions [n x 3 x length] and scaled
/// targets [n x 3], both row-major.
struct SampleSet {
  std::size_t length = 0;
  std::vector<float> inputs;
  std::vector<float> targets;

  std::size_t size() const { return targets.size() / 3; }
  bool empty() const { return targets.empty(); }
};

/// Throws DataError when records differ in length.
SampleSet make_samples(const std::vector<seaway::MotionRecord>& records);
SampleSet subset(const SampleSet& set, std::span<const std::size_t> indices);

template <typename T>
ad::Tensor<T> batch_inputs(const SampleSet& set, std::span<const std::size_t> indices);
template <typename T>
ad::Tensor<T> batch_targets(const SampleSet& set, std::span<const std::size_t> indices);

/// Root mean square of each motion channel over the whole set.
std::array<double, 3> channel_rms(const SampleSet& set);

struct SplitSpec {
  double train = 0.7;
  double val = 0.15;
  double test = 0.15;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

/// Shuffles 0..n-1 with the split seed and cuts it into consecutive blocks
/// of floor(n * train) and floor(n * val) indices; test takes the rest.
SplitIndices split_indices(std::size_t n, const SplitSpec& spec);

}  // namespace seastate::training

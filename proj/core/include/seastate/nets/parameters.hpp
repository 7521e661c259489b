#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seastate/autodiff/tensor.hpp"
#include "seastate/random.hpp"

namespace seastate::nets {

/// Named, ordered collection of a model's tensors. Trainable entries are
/// optimized; the others (running statistics, input scales) are state that
/// is only persisted.
template <typename T>
class ParameterStore {
 public:
  struct Entry {
    std::string name;
    ad::Tensor<T> tensor;
    bool trainable;
  };

  /// Registers a tensor; names must be unique.
  ad::Tensor<T> add(std::string name, ad::Shape shape, std::vector<T> values, bool trainable = true);

  /// Uniform in +-gain * sqrt(6 / (fan_in + fan_out)).
  ad::Tensor<T> glorot(std::string name, ad::Shape shape, std::size_t fan_in, std::size_t fan_out,
                       Rng& rng, double gain = 1.0);
  ad::Tensor<T> constant(std::string name, ad::Shape shape, T value, bool trainable = true);

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<ad::Tensor<T>> trainable() const;
  std::size_t count(bool trainable_only = true) const;
  const Entry* find(const std::string& name) const;
  void zero_grad();

  /// Deep copy of every value (for best-epoch snapshots).
  std::vector<std::vector<T>> snapshot() const;
  void restore(const std::vector<std::vector<T>>& values);

 private:
  std::vector<Entry> entries_;
};

extern template class ParameterStore<float>;
extern template class ParameterStore<double>;

}  // namespace seastate::nets

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace seastate::ad {

using Shape = std::vector<std::size_t>;

std::size_t element_count(const Shape& shape);
std::string shape_string(const Shape& shape);

template <typename T>
struct TensorData {
  Shape shape;
  std::vector<T> value;
  std::vector<T> grad;  // empty until the tensor takes part in a backward pass
  bool requires_grad = false;
};

/// Shared handle to a dense row-major array. Copies alias the same storage;
/// use clone() for a deep copy.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(Shape shape, std::vector<T> values, bool requires_grad = false);

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, T value, bool requires_grad = false);
  static Tensor scalar(T value, bool requires_grad = false);

  bool defined() const { return static_cast<bool>(data_); }
  const Shape& shape() const { return data_->shape; }
  std::size_t rank() const { return data_->shape.size(); }
  std::size_t dim(std::size_t axis) const { return data_->shape.at(axis); }
  std::size_t size() const { return data_->value.size(); }

  std::span<T> values() { return data_->value; }
  std::span<const T> values() const { return data_->value; }
  T& operator[](std::size_t i) { return data_->value[i]; }
  const T& operator[](std::size_t i) const { return data_->value[i]; }
  /// Value of a single-element tensor.
  T item() const;

  bool requires_grad() const { return data_->requires_grad; }
  void set_requires_grad(bool on) { data_->requires_grad = on; }
  bool has_grad() const { return !data_->grad.empty(); }
  /// Gradient buffer; allocated (zeroed) on first access.
  std::span<T> grad();
  std::span<const T> grad() const { return data_->grad; }
  void zero_grad();

  Tensor clone() const;
  TensorData<T>& data() { return *data_; }
  const TensorData<T>& data() const { return *data_; }
  std::shared_ptr<TensorData<T>> storage() const { return data_; }

 private:
  std::shared_ptr<TensorData<T>> data_;
};

/// Ordered record of backward rules. Backward runs the rules in exact
/// reverse order of recording; every rule accumulates into its inputs'
/// gradients. A non-recording tape evaluates ops without keeping any rule.
template <typename T>
class Tape {
 public:
  explicit Tape(bool recording = true) : recording_(recording) {}

  bool recording() const { return recording_; }
  std::size_t size() const { return rules_.size(); }

  void record(std::function<void()> rule) { rules_.push_back(std::move(rule)); }

  /// Seeds d(loss)/d(loss) = 1 and propagates. `loss` must be a
  /// single-element tensor produced while this tape was recording.
  void backward(Tensor<T>& loss);

  void clear() { rules_.clear(); }

 private:
  bool recording_;
  std::vector<std::function<void()>> rules_;
};

extern template class Tensor<float>;
extern template class Tensor<double>;
extern template class Tape<float>;
extern template class Tape<double>;

}  // namespace seastate::ad

#include "seastate/autodiff/tensor.hpp"

#include <algorithm>

#include "seastate/error.hpp"

namespace seastate::ad {

std::size_t element_count(const Shape& shape) {
  std::size_t n = 1;
  for (auto e : shape) n *= e;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

template <typename T>
Tensor<T>::Tensor(Shape shape, std::vector<T> values, bool requires_grad)
    : data_(std::make_shared<TensorData<T>>()) {
  if (element_count(shape) != values.size()) {
    throw ShapeError("tensor shape " + shape_string(shape) + " does not hold " +
                     std::to_string(values.size()) + " values");
  }
  data_->shape = std::move(shape);
  data_->value = std::move(values);
  data_->requires_grad = requires_grad;
}

template <typename T>
Tensor<T> Tensor<T>::zeros(Shape shape, bool requires_grad) {
  return full(std::move(shape), T(0), requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::full(Shape shape, T value, bool requires_grad) {
  const std::size_t n = element_count(shape);
  return Tensor(std::move(shape), std::vector<T>(n, value), requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::scalar(T value, bool requires_grad) {
  return Tensor(Shape{}, std::vector<T>{value}, requires_grad);
}

template <typename T>
T Tensor<T>::item() const {
  if (size() != 1) throw ShapeError("item() needs a single-element tensor, got " + shape_string(shape()));
  return data_->value[0];
}

template <typename T>
std::span<T> Tensor<T>::grad() {
  if (data_->grad.size() != data_->value.size()) data_->grad.assign(data_->value.size(), T(0));
  return data_->grad;
}

template <typename T>
void Tensor<T>::zero_grad() {
  std::fill(data_->grad.begin(), data_->grad.end(), T(0));
}

template <typename T>
Tensor<T> Tensor<T>::clone() const {
  Tensor copy(data_->shape, data_->value, data_->requires_grad);
  copy.data_->grad = data_->grad;
  return copy;
}

template <typename T>
void Tape<T>::backward(Tensor<T>& loss) {
  if (!loss.defined() || loss.size() != 1) {
    throw ArgumentError("backward needs a scalar loss");
  }
  if (!loss.requires_grad()) {
    throw ArgumentError("backward: loss does not depend on any tensor that requires grad");
  }
  loss.grad()[0] += T(1);
  for (auto it = rules_.rbegin(); it != rules_.rend(); ++it) (*it)();
}

template class Tensor<float>;
template class Tensor<double>;
template class Tape<float>;
template class Tape<double>;

}  // namespace seastate::ad

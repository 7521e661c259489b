#include "seastate/nets/parameters.hpp"

#include <algorithm>
#include <cmath>

#include "seastate/error.hpp"

namespace seastate::nets {

template <typename T>
ad::Tensor<T> ParameterStore<T>::add(std::string name, ad::Shape shape, std::vector<T> values,
                                     bool trainable) {
  if (find(name)) throw ArgumentError("duplicate parameter name " + name);
  ad::Tensor<T> t(std::move(shape), std::move(values), trainable);
  entries_.push_back({std::move(name), t, trainable});
  return t;
}

template <typename T>
ad::Tensor<T> ParameterStore<T>::glorot(std::string name, ad::Shape shape, std::size_t fan_in,
                                        std::size_t fan_out, Rng& rng, double gain) {
  const double limit = gain * std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::vector<T> v(ad::element_count(shape));
  for (auto& x : v) x = static_cast<T>(uniform(rng, -limit, limit));
  return add(std::move(name), std::move(shape), std::move(v), true);
}

template <typename T>
ad::Tensor<T> ParameterStore<T>::constant(std::string name, ad::Shape shape, T value,
                                          bool trainable) {
  const std::size_t n = ad::element_count(shape);
  return add(std::move(name), std::move(shape), std::vector<T>(n, value), trainable);
}

template <typename T>
std::vector<ad::Tensor<T>> ParameterStore<T>::trainable() const {
  std::vector<ad::Tensor<T>> out;
  for (const auto& e : entries_) {
    if (e.trainable) out.push_back(e.tensor);
  }
  return out;
}

template <typename T>
std::size_t ParameterStore<T>::count(bool trainable_only) const {
  std::size_t n = 0;
  for (const auto& e : entries_) {
    if (e.trainable || !trainable_only) n += e.tensor.size();
  }
  return n;
}

template <typename T>
const typename ParameterStore<T>::Entry* ParameterStore<T>::find(const std::string& name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

template <typename T>
void ParameterStore<T>::zero_grad() {
  for (auto& e : entries_) e.tensor.zero_grad();
}

template <typename T>
std::vector<std::vector<T>> ParameterStore<T>::snapshot() const {
  std::vector<std::vector<T>> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.emplace_back(e.tensor.values().begin(), e.tensor.values().end());
  return out;
}

template <typename T>
void ParameterStore<T>::restore(const std::vector<std::vector<T>>& values) {
  if (values.size() != entries_.size()) throw ArgumentError("snapshot does not match parameter store");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto dst = entries_[i].tensor.values();
    if (values[i].size() != dst.size()) throw ArgumentError("snapshot entry size mismatch");
    std::copy(values[i].begin(), values[i].end(), dst.begin());
  }
}

template class ParameterStore<float>;
template class ParameterStore<double>;

}  // namespace seastate::nets

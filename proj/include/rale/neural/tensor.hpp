// Dense row-major n-dimensional array. The single value carrier for all
// neural computation; float in production, double in gradient-check builds.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <vector>

#include "rale/common.hpp"

namespace rale::nn {

template <typename T>
class TensorT {
 public:
  using value_type = T;

  TensorT() = default;

  explicit TensorT(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(checked_numel(shape_), T{}) {}

  TensorT(std::vector<std::size_t> shape, std::vector<T> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != checked_numel(shape_)) {
      throw ShapeError("tensor data length does not match shape");
    }
  }

  static TensorT zeros(std::vector<std::size_t> shape) { return TensorT(std::move(shape)); }

  static TensorT full(std::vector<std::size_t> shape, T value) {
    TensorT t(std::move(shape));
    std::fill(t.data_.begin(), t.data_.end(), value);
    return t;
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t i) const { return shape_.at(i); }
  std::size_t numel() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::span<T> values() { return {data_.data(), data_.size()}; }
  std::span<const T> values() const { return {data_.data(), data_.size()}; }

  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  /// Multi-index access (slow; for tests and small tensors).
  template <typename... Ix>
  T& at(Ix... ix) {
    return data_[flatten(ix...)];
  }
  template <typename... Ix>
  const T& at(Ix... ix) const {
    return data_[flatten(ix...)];
  }

  /// Reinterprets the shape; element count must be preserved.
  TensorT reshaped(std::vector<std::size_t> new_shape) const {
    if (checked_numel(new_shape) != numel()) {
      throw ShapeError(detail::concat("reshape from ", numel(), " to incompatible shape"));
    }
    return TensorT(std::move(new_shape), data_);
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  bool same_shape(const TensorT& other) const { return shape_ == other.shape_; }

  /// Casts elementwise to another scalar type.
  template <typename U>
  TensorT<U> cast() const {
    std::vector<U> out(data_.size());
    for (std::size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<U>(data_[i]);
    return TensorT<U>(shape_, std::move(out));
  }

  bool all_finite() const {
    for (const T v : data_) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }

 private:
  static std::size_t checked_numel(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (const std::size_t d : shape) n *= d;
    return shape.empty() ? 0 : n;
  }

  template <typename... Ix>
  std::size_t flatten(Ix... ix) const {
    const std::size_t idx[] = {static_cast<std::size_t>(ix)...};
    constexpr std::size_t k = sizeof...(Ix);
    if (k != shape_.size()) throw ShapeError("index rank mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < k; ++i) flat = flat * shape_[i] + idx[i];
    return flat;
  }

  std::vector<std::size_t> shape_;
  std::vector<T> data_;
};

using Tensor = TensorT<float>;

template <typename T>
std::string shape_string(const TensorT<T>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.dim(i));
  }
  return s + "]";
}

template <typename T>
void require_shape(const TensorT<T>& t, const std::vector<std::size_t>& shape,
                   const char* what) {
  if (t.shape() != shape) {
    throw ShapeError(detail::concat(what, ": unexpected shape ", shape_string(t)));
  }
}

/// Fills a tensor with uniform draws from [lo, hi).
template <typename T>
void fill_uniform(TensorT<T>& t, Rng& rng, double lo, double hi) {
  for (auto& v : t.values()) v = static_cast<T>(rng.uniform(lo, hi));
}

/// He-uniform initialization for a parameter with the given fan-in.
template <typename T>
void fill_he_uniform(TensorT<T>& t, Rng& rng, std::size_t fan_in) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in ? fan_in : 1));
  fill_uniform(t, rng, -limit, limit);
}

}  // namespace rale::nn

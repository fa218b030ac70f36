// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstring>
#include <initializer_list>
#include <memory>
#include <new>
#include <span>
#include <utility>
#include <vector>

#include "fusevec/errors.hpp"
#include "fusevec/simd_lanes.hpp"

namespace fusevec {

/// Owned, fixed-length, aligned storage. Every vector is aligned for the
/// widest lane backend, so any backend may evaluate over it.
template <simd::LaneScalar S>
class DenseVector {
 public:
  using value_type = S;
  static constexpr std::size_t kAlignment = 64;

  DenseVector() = default;

  explicit DenseVector(std::size_t n) : len_(n), data_(allocate(n)) {
    if (n != 0) std::memset(data_.get(), 0, n * sizeof(S));
  }

  static DenseVector zeros(std::size_t n) { return DenseVector(n); }

  static DenseVector from_values(std::span<const S> values) {
    DenseVector v(values.size(), uninitialized_tag{});
    std::copy(values.begin(), values.end(), v.data_.get());
    return v;
  }

  static DenseVector from_values(std::initializer_list<S> values) {
    return from_values(std::span<const S>(values.begin(), values.size()));
  }

  DenseVector(const DenseVector& other) : DenseVector(other.len_, uninitialized_tag{}) {
    std::copy_n(other.data(), len_, data());
  }

  DenseVector(DenseVector&& other) noexcept
      : len_(std::exchange(other.len_, 0)), data_(std::move(other.data_)) {}

  // Elementwise copy; lengths are fixed, so they must agree.
  DenseVector& operator=(const DenseVector& other) {
    if (this == &other) return *this;
    if (other.len_ != len_) throw LengthError("DenseVector copy: length mismatch");
    std::copy_n(other.data(), len_, data());
    return *this;
  }

  DenseVector& operator=(DenseVector&&) = delete;

  /// Evaluates an expression into this vector on the native backend with
  /// the default plan. The expression may reference this vector itself.
  template <class E>
    requires requires { typename E::TemporaryStorage; }
  DenseVector& operator=(const E& expr) {
    assign_expression(*this, expr);  // blas.hpp
    return *this;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  S* data() noexcept { return data_.get(); }
  const S* data() const noexcept { return data_.get(); }

  std::span<S> span() noexcept { return {data(), len_}; }
  std::span<const S> span() const noexcept { return {data(), len_}; }

  S get(std::size_t i) const {
    FUSEVEC_EXPECTS(i < len_);
    return data_[i];
  }

  void set(std::size_t i, S v) {
    FUSEVEC_EXPECTS(i < len_);
    data_[i] = v;
  }

  std::vector<S> to_values() const { return {data(), data() + len_}; }

 private:
  struct uninitialized_tag {};
  struct AlignedFree {
    void operator()(S* p) const noexcept {
      ::operator delete[](p, std::align_val_t{kAlignment});
    }
  };
  using Buffer = std::unique_ptr<S[], AlignedFree>;

  DenseVector(std::size_t n, uninitialized_tag) : len_(n), data_(allocate(n)) {}

  static Buffer allocate(std::size_t n) {
    if (n == 0) return Buffer{};
    void* p = ::operator new[](n * sizeof(S), std::align_val_t{kAlignment});
    return Buffer{static_cast<S*>(p)};
  }

  std::size_t len_ = 0;
  Buffer data_;
};

}  // namespace fusevec

// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plain scalar reference loops and an access-counting vector. Nothing in
// here may use lanes, unrolling or masking: these are what the engine is
// checked against.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "fusevec/dense_vector.hpp"
#include "fusevec/errors.hpp"
#include "fusevec/expr.hpp"

namespace fusevec::oracle {

namespace detail {
inline void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw LengthError("oracle: length mismatch");
}
}  // namespace detail

template <class S>
S oracle_dot(std::span<const S> x, std::span<const S> y) {
  detail::require_same_length(x.size(), y.size());
  S acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class S>
S oracle_sum(std::span<const S> x) {
  S acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i];
  return acc;
}

template <class S>
void oracle_scal(S alpha, std::span<S> x) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = alpha * x[i];
}

template <class S>
void oracle_axpy(S alpha, std::span<const S> x, std::span<S> y) {
  detail::require_same_length(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = y[i] + alpha * x[i];
}

template <class S>
void oracle_scaled_copy(S alpha, std::span<const S> x, std::span<S> out) {
  detail::require_same_length(x.size(), out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = alpha * x[i];
}

/// Compensated (Kahan) left-to-right sum.
template <class S>
S kahan_sum(std::span<const S> values) {
  S sum = 0;
  S c = 0;
  for (const S v : values) {
    const S y = v - c;
    const S t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// Kahan sum of the rounded products x[i] * y[i]. Also returns the sum of
/// |x[i] * y[i]|, the scale that reduction tolerances are measured against.
template <class S>
struct CompensatedDot {
  S value;
  S abs_sum;
};

template <class S>
CompensatedDot<S> kahan_dot(std::span<const S> x, std::span<const S> y) {
  detail::require_same_length(x.size(), y.size());
  S sum = 0, c = 0, abs_sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const S p = x[i] * y[i];
    const S yk = p - c;
    const S t = sum + yk;
    c = (t - sum) - yk;
    sum = t;
    abs_sum += std::abs(p);
  }
  return {sum, abs_sum};
}

}  // namespace fusevec::oracle

namespace fusevec {

/// A vector that tallies element reads and writes made through expression
/// evaluation. Counting never changes values.
template <simd::LaneScalar S>
class CountingVector {
 public:
  explicit CountingVector(DenseVector<S> values) : values_(std::move(values)) {}
  explicit CountingVector(std::size_t n) : values_(n) {}

  std::size_t size() const { return values_.size(); }
  const DenseVector<S>& values() const { return values_; }
  DenseVector<S>& values() { return values_; }

  std::size_t reads() const { return reads_; }
  std::size_t writes() const { return writes_; }
  void reset_counts() const {
    reads_ = 0;
    writes_ = 0;
  }

  void note_reads(std::size_t n) const { reads_ += n; }
  void note_writes(std::size_t n) const { writes_ += n; }

 private:
  DenseVector<S> values_;
  mutable std::size_t reads_ = 0;
  mutable std::size_t writes_ = 0;
};

template <simd::LaneScalar S>
class CountingRef : public Expr<CountingRef<S>> {
 public:
  using Type = S;
  template <class V>
  using Storage = typename V::vector_t;
  using TemporaryStorage = EmptyStorage;
  static constexpr int register_footprint = 1;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = false;

  explicit CountingRef(const CountingVector<S>& v) : v_(&v) {}

  std::size_t size() const { return v_->size(); }
  bool lengths_match(std::size_t n) const { return v_->size() == n; }

  void init(TemporaryStorage&) const {}
  void cleanup(TemporaryStorage&) const {}
  template <class V>
  void load_once(Storage<V>&, TemporaryStorage&) const {}
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage&) const {
    v_->note_reads(V::width);
    s = V::load_aligned(v_->values().data(), i);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t, Storage<V>& s, TemporaryStorage&) const {
    return s;
  }
  template <class V>
  void store(std::size_t, Storage<V>&, TemporaryStorage&) const {}
  S single_op(std::size_t i, TemporaryStorage&) const {
    v_->note_reads(1);
    return v_->values().data()[i];
  }

 private:
  const CountingVector<S>* v_;
};

template <simd::LaneScalar S>
class CountingTarget {
 public:
  using Type = S;

  explicit CountingTarget(CountingVector<S>& v) : v_(&v) {}

  std::size_t size() const { return v_->size(); }
  template <class V>
  void write(std::size_t i, typename V::vector_t v) const {
    v_->note_writes(V::width);
    V::store_aligned(v_->values().data(), i, v);
  }
  void write_single(std::size_t i, S v) const {
    v_->note_writes(1);
    v_->values().data()[i] = v;
  }

 private:
  CountingVector<S>* v_;
};

template <simd::LaneScalar S>
CountingRef<S> to_node(const CountingVector<S>& v) {
  return CountingRef<S>(v);
}

template <simd::LaneScalar S>
CountingTarget<S> to_target(CountingVector<S>& v) {
  return CountingTarget<S>(v);
}

}  // namespace fusevec

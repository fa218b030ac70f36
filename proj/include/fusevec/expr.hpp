// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Expression nodes. Overloaded operators build a tree of these without
// touching any element; a loop template (loop_engine.hpp) later drives the
// tree through the node contract:
//
//   init(ts)                   once per evaluation
//   load_once<V>(s, ts)        once per unroll slot, before the main loop
//   load<V>(i, s, ts)          bring lanes i..i+W-1 of every leaf into s
//   vector_op<V>(i, s, ts)     compute lanes i..i+W-1 of the expression
//   store<V>(i, s, ts)         write the slot result (assignment roots only)
//   single_op(i, ts)           scalar path for the remainder indices
//   cleanup(ts)                once per evaluation, after the loops
//   reduction<V>(slots, ts)    reduction roots: fold slots + remainder
//
// V is a simd::Lanes<S, Backend> instance. Storage<V> is per-slot state and is
// composed pairwise from the children; TemporaryStorage is loop-wide state,
// composed the same way.

#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>

#include "fusevec/dense_vector.hpp"
#include "fusevec/simd_lanes.hpp"

namespace fusevec {

template <class E>
struct Expr {
  const E& self() const { return static_cast<const E&>(*this); }
};

template <class T>
concept Expression = std::derived_from<T, Expr<T>>;

template <class T>
concept ReductionRoot = Expression<T> && T::is_reduction;

template <class T>
concept AssignRoot = Expression<T> && T::is_assignment;

struct EmptyStorage {};

// ---------------------------------------------------------------------------
// Leaves

/// Read-only view of a DenseVector as an expression leaf.
template <simd::LaneScalar S>
class VectorRef : public Expr<VectorRef<S>> {
 public:
  using Type = S;
  template <class V>
  using Storage = typename V::vector_t;
  using TemporaryStorage = EmptyStorage;
  static constexpr int register_footprint = 1;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = false;

  explicit VectorRef(const DenseVector<S>& v) : data_(v.data()), len_(v.size()) {}

  std::size_t size() const { return len_; }
  bool lengths_match(std::size_t n) const { return len_ == n; }

  void init(TemporaryStorage&) const {}
  void cleanup(TemporaryStorage&) const {}
  template <class V>
  void load_once(Storage<V>&, TemporaryStorage&) const {}
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage&) const {
    s = V::load_aligned(data_, i);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t, Storage<V>& s, TemporaryStorage&) const {
    return s;
  }
  template <class V>
  void store(std::size_t, Storage<V>&, TemporaryStorage&) const {}
  S single_op(std::size_t i, TemporaryStorage&) const { return data_[i]; }

 private:
  const S* data_;
  std::size_t len_;
};

/// Writable destination of an assignment.
template <simd::LaneScalar S>
class VectorTarget {
 public:
  using Type = S;

  explicit VectorTarget(DenseVector<S>& v) : data_(v.data()), len_(v.size()) {}

  std::size_t size() const { return len_; }
  template <class V>
  void write(std::size_t i, typename V::vector_t v) const {
    V::store_aligned(data_, i, v);
  }
  void write_single(std::size_t i, S v) const { data_[i] = v; }

 private:
  S* data_;
  std::size_t len_;
};

// ---------------------------------------------------------------------------
// Elementwise interior nodes

struct AddOp {
  template <class V>
  static typename V::vector_t vec(typename V::vector_t a, typename V::vector_t b) {
    return V::add(a, b);
  }
  template <class S>
  static S scalar(S a, S b) { return a + b; }
};

struct SubOp {
  template <class V>
  static typename V::vector_t vec(typename V::vector_t a, typename V::vector_t b) {
    return V::sub(a, b);
  }
  template <class S>
  static S scalar(S a, S b) { return a - b; }
};

struct MulOp {
  template <class V>
  static typename V::vector_t vec(typename V::vector_t a, typename V::vector_t b) {
    return V::mul(a, b);
  }
  template <class S>
  static S scalar(S a, S b) { return a * b; }
};

template <Expression A, Expression B, class Op>
class BinaryNode : public Expr<BinaryNode<A, B, Op>> {
  static_assert(std::is_same_v<typename A::Type, typename B::Type>,
                "mixed element types in one expression");

 public:
  using Type = typename A::Type;
  template <class V>
  using Storage =
      std::pair<typename A::template Storage<V>, typename B::template Storage<V>>;
  using TemporaryStorage =
      std::pair<typename A::TemporaryStorage, typename B::TemporaryStorage>;
  static constexpr int register_footprint =
      A::register_footprint + B::register_footprint;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = false;

  BinaryNode(A a, B b) : a_(std::move(a)), b_(std::move(b)) {}

  const A& left() const { return a_; }
  const B& right() const { return b_; }

  std::size_t size() const { return a_.size(); }
  bool lengths_match(std::size_t n) const {
    return a_.lengths_match(n) && b_.lengths_match(n);
  }

  void init(TemporaryStorage& ts) const {
    a_.init(ts.first);
    b_.init(ts.second);
  }
  void cleanup(TemporaryStorage& ts) const {
    a_.cleanup(ts.first);
    b_.cleanup(ts.second);
  }
  template <class V>
  void load_once(Storage<V>& s, TemporaryStorage& ts) const {
    a_.template load_once<V>(s.first, ts.first);
    b_.template load_once<V>(s.second, ts.second);
  }
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    a_.template load<V>(i, s.first, ts.first);
    b_.template load<V>(i, s.second, ts.second);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    const auto l = a_.template vector_op<V>(i, s.first, ts.first);
    const auto r = b_.template vector_op<V>(i, s.second, ts.second);
    return Op::template vec<V>(l, r);
  }
  template <class V>
  void store(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    a_.template store<V>(i, s.first, ts.first);
    b_.template store<V>(i, s.second, ts.second);
  }
  Type single_op(std::size_t i, TemporaryStorage& ts) const {
    const Type l = a_.single_op(i, ts.first);
    const Type r = b_.single_op(i, ts.second);
    return Op::scalar(l, r);
  }

 private:
  A a_;
  B b_;
};

template <Expression A, Expression B>
using AddNode = BinaryNode<A, B, AddOp>;
template <Expression A, Expression B>
using SubNode = BinaryNode<A, B, SubOp>;
template <Expression A, Expression B>
using MulNode = BinaryNode<A, B, MulOp>;

/// alpha * child. The broadcast alpha lives in each slot's storage and is
/// materialized once per slot by load_once.
template <Expression E>
class ScaleNode : public Expr<ScaleNode<E>> {
 public:
  using Type = typename E::Type;
  template <class V>
  using Storage = std::pair<typename E::template Storage<V>, typename V::vector_t>;
  using TemporaryStorage = typename E::TemporaryStorage;
  static constexpr int register_footprint = E::register_footprint + 1;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = false;

  ScaleNode(Type alpha, E child) : alpha_(alpha), child_(std::move(child)) {}

  Type alpha() const { return alpha_; }

  std::size_t size() const { return child_.size(); }
  bool lengths_match(std::size_t n) const { return child_.lengths_match(n); }

  void init(TemporaryStorage& ts) const { child_.init(ts); }
  void cleanup(TemporaryStorage& ts) const { child_.cleanup(ts); }
  template <class V>
  void load_once(Storage<V>& s, TemporaryStorage& ts) const {
    s.second = V::splat(alpha_);
    child_.template load_once<V>(s.first, ts);
  }
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template load<V>(i, s.first, ts);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    return V::mul(s.second, child_.template vector_op<V>(i, s.first, ts));
  }
  template <class V>
  void store(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template store<V>(i, s.first, ts);
  }
  Type single_op(std::size_t i, TemporaryStorage& ts) const {
    return alpha_ * child_.single_op(i, ts);
  }

 private:
  Type alpha_;
  E child_;
};

template <Expression E>
class NegNode : public Expr<NegNode<E>> {
 public:
  using Type = typename E::Type;
  template <class V>
  using Storage = typename E::template Storage<V>;
  using TemporaryStorage = typename E::TemporaryStorage;
  static constexpr int register_footprint = E::register_footprint;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = false;

  explicit NegNode(E child) : child_(std::move(child)) {}

  std::size_t size() const { return child_.size(); }
  bool lengths_match(std::size_t n) const { return child_.lengths_match(n); }

  void init(TemporaryStorage& ts) const { child_.init(ts); }
  void cleanup(TemporaryStorage& ts) const { child_.cleanup(ts); }
  template <class V>
  void load_once(Storage<V>& s, TemporaryStorage& ts) const {
    child_.template load_once<V>(s, ts);
  }
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template load<V>(i, s, ts);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    return V::neg(child_.template vector_op<V>(i, s, ts));
  }
  template <class V>
  void store(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template store<V>(i, s, ts);
  }
  Type single_op(std::size_t i, TemporaryStorage& ts) const {
    return -child_.single_op(i, ts);
  }

 private:
  E child_;
};

// ---------------------------------------------------------------------------
// Roots

/// dest = source. The computed lanes stay in the slot between vector_op and
/// store. dest may be the same vector as a source leaf; partial overlap is not
/// supported.
template <class Target, Expression Src>
class AssignNode : public Expr<AssignNode<Target, Src>> {
  static_assert(std::is_same_v<typename Target::Type, typename Src::Type>);

 public:
  using Type = typename Src::Type;
  template <class V>
  using Storage = std::pair<typename Src::template Storage<V>, typename V::vector_t>;
  using TemporaryStorage = typename Src::TemporaryStorage;
  // The result lane reuses the source's registers.
  static constexpr int register_footprint = Src::register_footprint;
  static constexpr bool is_reduction = false;
  static constexpr bool is_assignment = true;

  AssignNode(Target dest, Src src) : dest_(std::move(dest)), src_(std::move(src)) {}

  std::size_t size() const { return dest_.size(); }
  bool lengths_match(std::size_t n) const {
    return dest_.size() == n && src_.lengths_match(n);
  }

  void init(TemporaryStorage& ts) const { src_.init(ts); }
  void cleanup(TemporaryStorage& ts) const { src_.cleanup(ts); }
  template <class V>
  void load_once(Storage<V>& s, TemporaryStorage& ts) const {
    src_.template load_once<V>(s.first, ts);
  }
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    src_.template load<V>(i, s.first, ts);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    s.second = src_.template vector_op<V>(i, s.first, ts);
    return s.second;
  }
  template <class V>
  void store(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    src_.template store<V>(i, s.first, ts);
    dest_.template write<V>(i, s.second);
  }
  Type single_op(std::size_t i, TemporaryStorage& ts) const {
    const Type v = src_.single_op(i, ts);
    dest_.write_single(i, v);
    return v;
  }

 private:
  Target dest_;
  Src src_;
};

struct IdentityFinish {
  template <class S>
  static S apply(S v) { return v; }
};

struct SqrtFinish {
  template <class S>
  static S apply(S v) { return std::sqrt(v); }
};

/// Sum of the child expression over all indices. Each slot keeps its own
/// lane accumulator; the remainder accumulates in TemporaryStorage.
///
/// The fold order is fixed: horizontal_sum of slot 0, then of slots 1..U-1
/// in ascending order, then the remainder scalar, then Finish.
template <Expression E, class Finish = IdentityFinish>
class SumNode : public Expr<SumNode<E, Finish>> {
 public:
  using Type = typename E::Type;
  template <class V>
  using Storage = std::pair<typename E::template Storage<V>, typename V::vector_t>;
  using TemporaryStorage = std::pair<typename E::TemporaryStorage, Type>;
  static constexpr int register_footprint = E::register_footprint + 1;
  static constexpr bool is_reduction = true;
  static constexpr bool is_assignment = false;

  explicit SumNode(E child) : child_(std::move(child)) {}

  const E& child() const { return child_; }

  std::size_t size() const { return child_.size(); }
  bool lengths_match(std::size_t n) const { return child_.lengths_match(n); }

  void init(TemporaryStorage& ts) const {
    ts.second = Type(0);
    child_.init(ts.first);
  }
  void cleanup(TemporaryStorage& ts) const { child_.cleanup(ts.first); }
  template <class V>
  void load_once(Storage<V>& s, TemporaryStorage& ts) const {
    s.second = V::splat(Type(0));
    child_.template load_once<V>(s.first, ts.first);
  }
  template <class V>
  void load(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template load<V>(i, s.first, ts.first);
  }
  template <class V>
  typename V::vector_t vector_op(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    s.second = V::add(s.second, child_.template vector_op<V>(i, s.first, ts.first));
    return s.second;
  }
  template <class V>
  void store(std::size_t i, Storage<V>& s, TemporaryStorage& ts) const {
    child_.template store<V>(i, s.first, ts.first);
  }
  Type single_op(std::size_t i, TemporaryStorage& ts) const {
    ts.second += child_.single_op(i, ts.first);
    return ts.second;
  }
  template <class V>
  Type reduction(std::span<const Storage<V>> slots, const TemporaryStorage& ts) const {
    Type r = slots.empty() ? Type(0) : V::horizontal_sum(slots[0].second);
    for (std::size_t k = 1; k < slots.size(); ++k) r += V::horizontal_sum(slots[k].second);
    r += ts.second;
    return Finish::apply(r);
  }

 private:
  E child_;
};

template <Expression A, Expression B>
using DotNode = SumNode<MulNode<A, B>>;

template <Expression E>
using Norm2Node = SumNode<MulNode<E, E>, SqrtFinish>;

// ---------------------------------------------------------------------------
// Operator surface

template <class E>
E to_node(const Expr<E>& e) {
  return e.self();
}

template <simd::LaneScalar S>
VectorRef<S> to_node(const DenseVector<S>& v) {
  return VectorRef<S>(v);
}

template <simd::LaneScalar S>
VectorTarget<S> to_target(DenseVector<S>& v) {
  return VectorTarget<S>(v);
}

template <class T>
using node_t = std::remove_cvref_t<decltype(to_node(std::declval<const T&>()))>;

template <class T>
concept Operand = requires(const T& t) { to_node(t); } && Expression<node_t<T>>;

template <Operand L, Operand R>
auto operator+(const L& l, const R& r) {
  return AddNode<node_t<L>, node_t<R>>(to_node(l), to_node(r));
}

template <Operand L, Operand R>
auto operator-(const L& l, const R& r) {
  return SubNode<node_t<L>, node_t<R>>(to_node(l), to_node(r));
}

/// Elementwise product.
template <Operand L, Operand R>
auto operator*(const L& l, const R& r) {
  return MulNode<node_t<L>, node_t<R>>(to_node(l), to_node(r));
}

template <class A, Operand R>
  requires std::is_arithmetic_v<A>
auto operator*(A alpha, const R& r) {
  using N = node_t<R>;
  return ScaleNode<N>(static_cast<typename N::Type>(alpha), to_node(r));
}

template <Operand L, class A>
  requires std::is_arithmetic_v<A>
auto operator*(const L& l, A alpha) {
  using N = node_t<L>;
  return ScaleNode<N>(static_cast<typename N::Type>(alpha), to_node(l));
}

template <Operand R>
auto operator-(const R& r) {
  return NegNode<node_t<R>>(to_node(r));
}

template <Operand E>
auto sum_of(const E& e) {
  return SumNode<node_t<E>>(to_node(e));
}

template <Operand A, Operand B>
auto dot_of(const A& a, const B& b) {
  return DotNode<node_t<A>, node_t<B>>(MulNode<node_t<A>, node_t<B>>(to_node(a), to_node(b)));
}

template <Operand E>
auto norm2_of(const E& e) {
  using N = node_t<E>;
  return Norm2Node<N>(MulNode<N, N>(to_node(e), to_node(e)));
}

}  // namespace fusevec

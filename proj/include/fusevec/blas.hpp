// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Level-1 entry points. Each is a one-line expression handed to the engine.

#pragma once

#include <utility>

#include "fusevec/dense_vector.hpp"
#include "fusevec/expr.hpp"
#include "fusevec/loop_engine.hpp"

namespace fusevec {

/// dest = src on the given backend. dest is anything to_target() accepts.
template <class Backend = simd::NativeBackend, class Dest, Operand Src>
void assign(Dest& dest, const Src& src, const PlanOverrides& overrides = {}) {
  using Target = decltype(to_target(dest));
  const AssignNode<Target, node_t<Src>> root(to_target(dest), to_node(src));
  execute_assign<Backend>(root, plan_for<Backend>(root, overrides));
}

template <class Backend = simd::NativeBackend, ReductionRoot Node>
typename Node::Type evaluate(const Node& root, const PlanOverrides& overrides = {}) {
  return execute_reduce<Backend>(root, plan_for<Backend>(root, overrides));
}

template <simd::LaneScalar S, class E>
void assign_expression(DenseVector<S>& dest, const E& src) {
  assign(dest, src);
}

/// Vector operands of the level-1 entry points: DenseVector<S> or any other
/// vector template the expression layer accepts (CountingVector<S>, ...).
template <class T>
concept VectorOperand = Operand<T> && requires(T& t) { to_target(t); };

/// Sum of x[i] * y[i]. Throws LengthError when the lengths differ.
template <class Backend = simd::NativeBackend, simd::LaneScalar S,
          template <class> class X, template <class> class Y>
  requires VectorOperand<X<S>> && VectorOperand<Y<S>>
S dot(const X<S>& x, const Y<S>& y, const PlanOverrides& overrides = {}) {
  return evaluate<Backend>(dot_of(x, y), overrides);
}

/// x = alpha * x, in place.
template <class Backend = simd::NativeBackend, simd::LaneScalar S, template <class> class X>
  requires VectorOperand<X<S>>
void scal(S alpha, X<S>& x, const PlanOverrides& overrides = {}) {
  assign<Backend>(x, alpha * x, overrides);
}

/// y = y + alpha * x.
template <class Backend = simd::NativeBackend, simd::LaneScalar S,
          template <class> class X, template <class> class Y>
  requires VectorOperand<X<S>> && VectorOperand<Y<S>>
void axpy(S alpha, const X<S>& x, Y<S>& y, const PlanOverrides& overrides = {}) {
  assign<Backend>(y, y + alpha * x, overrides);
}

/// out = alpha * x in a single traversal. out must not be x.
template <class Backend = simd::NativeBackend, simd::LaneScalar S,
          template <class> class X, template <class> class Out>
  requires VectorOperand<X<S>> && VectorOperand<Out<S>>
void scaled_copy(S alpha, const X<S>& x, Out<S>& out, const PlanOverrides& overrides = {}) {
  FUSEVEC_EXPECTS(static_cast<const void*>(&x) != static_cast<const void*>(&out));
  assign<Backend>(out, alpha * x, overrides);
}

template <class Backend = simd::NativeBackend, simd::LaneScalar S, template <class> class X>
  requires VectorOperand<X<S>>
S sum(const X<S>& x, const PlanOverrides& overrides = {}) {
  return evaluate<Backend>(sum_of(x), overrides);
}

template <class Backend = simd::NativeBackend, simd::LaneScalar S, template <class> class X>
  requires VectorOperand<X<S>>
S norm2(const X<S>& x, const PlanOverrides& overrides = {}) {
  return evaluate<Backend>(norm2_of(x), overrides);
}

}  // namespace fusevec

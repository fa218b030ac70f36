// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Execute function and loop templates. A plan fixes the unroll factor U (slots
// per iteration), the lane width W and the number of packages P per
// iteration. Each package covers U/P consecutive slots and is issued as a
// burst of loads, then a burst of vector_ops, then a burst of stores, slot
// order preserved inside each burst. Indices past the masked length run
// through the scalar single_op path.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fusevec/errors.hpp"
#include "fusevec/expr.hpp"
#include "fusevec/simd_lanes.hpp"

namespace fusevec {

inline constexpr int kDefaultRegisterBudget = 16;

struct UnrollPlan {
  int unroll = 1;
  std::size_t width = 1;
  int packages = 1;
  std::size_t masked_length = 0;
};

/// Pins parts of the plan; unset fields use the automatic choice.
struct PlanOverrides {
  std::optional<int> unroll = std::nullopt;
  std::optional<int> packages = std::nullopt;
  std::optional<int> register_budget = std::nullopt;
};

constexpr bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Largest multiple of block not exceeding length; block must be a power of two.
constexpr std::size_t masked_length(std::size_t length, std::size_t block) {
  return length & ~(block - 1);
}

/// Picks the largest U in {1,2,4,8} with U * footprint <= budget. A
/// non-specialized backend gets U = 1 unless the caller pins U. P defaults
/// to U. Throws ConfigError for unsupported overrides.
UnrollPlan select_plan(int footprint, std::size_t length, simd::LaneCapabilities caps,
                       const PlanOverrides& overrides = {});

enum class Call { init, load_once, load, vector_op, store, single_op, cleanup, reduction };

const char* call_name(Call c);

/// One contract call. slot is -1 for calls not tied to a slot.
struct TraceEvent {
  Call call;
  int slot;
  std::size_t index;

  bool operator==(const TraceEvent&) const = default;
};

std::string to_string(const TraceEvent& e);

struct NullObserver {
  void operator()(Call, int, std::size_t) const noexcept {}
};

struct RecordingObserver {
  std::vector<TraceEvent> events;
  void operator()(Call c, int slot, std::size_t index) { events.push_back({c, slot, index}); }
};

namespace detail {

template <class V, int First, int PerPackage, class Node, class Slots, class TS, class Obs>
inline void run_package(const Node& root, std::size_t i, Slots& slots, TS& ts, Obs& obs) {
  constexpr std::size_t W = V::width;
  [&]<std::size_t... k>(std::index_sequence<k...>) {
    ((obs(Call::load, First + int(k), i + (First + k) * W),
      root.template load<V>(i + (First + k) * W, slots[First + k], ts)),
     ...);
    ((obs(Call::vector_op, First + int(k), i + (First + k) * W),
      root.template vector_op<V>(i + (First + k) * W, slots[First + k], ts)),
     ...);
    ((obs(Call::store, First + int(k), i + (First + k) * W),
      root.template store<V>(i + (First + k) * W, slots[First + k], ts)),
     ...);
  }(std::make_index_sequence<PerPackage>{});
}

template <class V, int U, int P, class Node, class Obs>
auto run_loop(const Node& root, std::size_t len, std::size_t n, Obs& obs) {
  static_assert(U % P == 0);
  using Storage = typename Node::template Storage<V>;
  constexpr int per_package = U / P;
  constexpr std::size_t step = std::size_t(U) * V::width;

  typename Node::TemporaryStorage ts{};
  obs(Call::init, -1, 0);
  root.init(ts);

  std::array<Storage, U> slots{};
  [&]<std::size_t... k>(std::index_sequence<k...>) {
    ((obs(Call::load_once, int(k), 0), root.template load_once<V>(slots[k], ts)), ...);
  }(std::make_index_sequence<U>{});

  std::size_t i = 0;
  for (; i < n; i += step) {
    [&]<std::size_t... p>(std::index_sequence<p...>) {
      (run_package<V, int(p) * per_package, per_package>(root, i, slots, ts, obs), ...);
    }(std::make_index_sequence<P>{});
  }
  for (; i < len; ++i) {
    obs(Call::single_op, -1, i);
    root.single_op(i, ts);
  }

  obs(Call::cleanup, -1, 0);
  root.cleanup(ts);

  if constexpr (Node::is_reduction) {
    obs(Call::reduction, -1, 0);
    return root.template reduction<V>(std::span<const Storage>(slots), ts);
  }
}

#define FUSEVEC_PLAN_CASE(U, P) \
  case (U) * 16 + (P):          \
    return run_loop<V, U, P>(root, len, plan.masked_length, obs);

template <class V, class Node, class Obs>
auto dispatch(const Node& root, const UnrollPlan& plan, std::size_t len, Obs& obs) {
  switch (plan.unroll * 16 + plan.packages) {
    FUSEVEC_PLAN_CASE(1, 1)
    FUSEVEC_PLAN_CASE(2, 1)
    FUSEVEC_PLAN_CASE(2, 2)
    FUSEVEC_PLAN_CASE(4, 1)
    FUSEVEC_PLAN_CASE(4, 2)
    FUSEVEC_PLAN_CASE(4, 4)
    FUSEVEC_PLAN_CASE(8, 1)
    FUSEVEC_PLAN_CASE(8, 2)
    FUSEVEC_PLAN_CASE(8, 4)
    FUSEVEC_PLAN_CASE(8, 8)
    default:
      throw ConfigError("no loop template for unroll " + std::to_string(plan.unroll) +
                        " with " + std::to_string(plan.packages) + " packages");
  }
}

#undef FUSEVEC_PLAN_CASE

template <class V, class Node>
std::size_t checked_length(const Node& root, const UnrollPlan& plan) {
  const std::size_t len = root.size();
  if (!root.lengths_match(len)) throw LengthError("expression operands differ in length");
  if (plan.width != V::width)
    throw ConfigError("plan lane width does not match the backend");
  if (plan.masked_length != masked_length(len, std::size_t(plan.unroll) * V::width))
    throw ConfigError("plan was built for a different length");
  return len;
}

}  // namespace detail

template <class Backend, Expression Node>
UnrollPlan plan_for(const Node& root, const PlanOverrides& overrides = {}) {
  return select_plan(Node::register_footprint, root.size(),
                     simd::capabilities<typename Node::Type, Backend>(), overrides);
}

template <class Backend = simd::NativeBackend, AssignRoot Node, class Observer = NullObserver>
void execute_assign(const Node& root, const UnrollPlan& plan, Observer&& obs = {}) {
  using V = simd::Lanes<typename Node::Type, Backend>;
  const std::size_t len = detail::checked_length<V>(root, plan);
  detail::dispatch<V>(root, plan, len, obs);
}

template <class Backend = simd::NativeBackend, ReductionRoot Node,
          class Observer = NullObserver>
typename Node::Type execute_reduce(const Node& root, const UnrollPlan& plan,
                                   Observer&& obs = {}) {
  using V = simd::Lanes<typename Node::Type, Backend>;
  const std::size_t len = detail::checked_length<V>(root, plan);
  return detail::dispatch<V>(root, plan, len, obs);
}

/// Evaluates root (with its side effects) and returns every contract call the
/// loop template made, in order.
template <class Backend = simd::NativeBackend, Expression Node>
  requires(Node::is_reduction || Node::is_assignment)
std::vector<TraceEvent> call_trace(const Node& root, const UnrollPlan& plan) {
  RecordingObserver rec;
  if constexpr (Node::is_reduction)
    execute_reduce<Backend>(root, plan, rec);
  else
    execute_assign<Backend>(root, plan, rec);
  return std::move(rec.events);
}

}  // namespace fusevec

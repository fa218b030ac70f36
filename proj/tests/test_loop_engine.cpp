// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <vector>

#include "fusevec/blas.hpp"
#include "fusevec/loop_engine.hpp"
#include "fusevec/reference_oracle.hpp"
#include "test_support.hpp"
#include "trace_oracle.hpp"

namespace fusevec {
namespace {

using testing::bit_equal;

constexpr simd::LaneCapabilities kSse4{4, true, 16};
constexpr simd::LaneCapabilities kScalar{1, false, 4};

TEST(SelectPlan, LargestUnrollWithinBudget) {
  EXPECT_EQ(select_plan(2, 100, kSse4).unroll, 8);
  EXPECT_EQ(select_plan(3, 100, kSse4).unroll, 4);
  EXPECT_EQ(select_plan(4, 100, kSse4).unroll, 4);
  EXPECT_EQ(select_plan(5, 100, kSse4).unroll, 2);
  EXPECT_EQ(select_plan(9, 100, kSse4).unroll, 1);
  // Over budget even at U = 1: still runs, one slot.
  EXPECT_EQ(select_plan(40, 100, kSse4).unroll, 1);
  EXPECT_EQ(select_plan(3, 100, kSse4, {.register_budget = 32}).unroll, 8);
}

TEST(SelectPlan, PackagesDefaultToUnroll) {
  const auto p = select_plan(2, 100, kSse4);
  EXPECT_EQ(p.packages, p.unroll);
  EXPECT_EQ(p.width, 4u);
  EXPECT_EQ(p.masked_length, 96u);
}

TEST(SelectPlan, FallbackIsOneByOne) {
  const auto p = select_plan(2, 37, kScalar);
  EXPECT_EQ(p.unroll, 1);
  EXPECT_EQ(p.width, 1u);
  EXPECT_EQ(p.packages, 1);
  EXPECT_EQ(p.masked_length, 37u);
}

TEST(SelectPlan, OverridesAreHonoured) {
  const auto p = select_plan(3, 100, kSse4, {.unroll = 8, .packages = 2});
  EXPECT_EQ(p.unroll, 8);
  EXPECT_EQ(p.packages, 2);
  EXPECT_EQ(select_plan(1, 10, kScalar, {.unroll = 4}).unroll, 4);
}

TEST(SelectPlan, RejectsBadConfiguration) {
  EXPECT_THROW(select_plan(0, 10, kSse4), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.unroll = 3}), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.unroll = 16}), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.unroll = 4, .packages = 3}), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.unroll = 2, .packages = 4}), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.packages = 0}), ConfigError);
  EXPECT_THROW(select_plan(2, 10, kSse4, {.register_budget = 0}), ConfigError);
  // A lane width of 3 can never give a power-of-two block.
  EXPECT_THROW(select_plan(2, 10, {3, true, 16}), ConfigError);
}

TEST(Masking, PropertiesForAllSmallLengths) {
  for (std::size_t len = 0; len <= 129; ++len) {
    for (std::size_t block : {1u, 2u, 4u, 8u, 16u, 32u}) {
      const std::size_t n = masked_length(len, block);
      EXPECT_LE(n, len);
      EXPECT_EQ(n % block, 0u);
      EXPECT_LT(len - n, block);
    }
  }
  EXPECT_EQ(masked_length(10, 8), 8u);
}

TEST(Execute, RejectsPlanForOtherBackendOrLength) {
  DenseVector<float> x(20), y(20);
  const AssignNode root(to_target(y), 2.0f * x);
  auto plan = plan_for<simd::ScalarBackend>(root);
  if (simd::capabilities<float>().width != 1) {
    EXPECT_THROW(execute_assign(root, plan), ConfigError);
  }
  plan.masked_length = 3;
  EXPECT_THROW(execute_assign<simd::ScalarBackend>(root, plan), ConfigError);
  plan = plan_for<simd::ScalarBackend>(root);
  plan.packages = 3;
  EXPECT_THROW(execute_assign<simd::ScalarBackend>(root, plan), ConfigError);
}

#if FUSEVEC_HAVE_SSE
TEST(CallTrace, TwoSlotsOnePackage) {
  DenseVector<float> a(16), b(16), c(16), d(16);
  const AssignNode root(to_target(d), a + (b - c));
  const auto plan = plan_for<simd::SseBackend>(root, {.unroll = 2, .packages = 1});
  const auto trace = call_trace<simd::SseBackend>(root, plan);
  std::vector<std::string> names;
  for (const auto& e : trace) names.push_back(to_string(e));
  const std::vector<std::string> want{
      "init",     "load_once", "load_once", "load(0)",  "load(4)",  "op(0)",
      "op(4)",    "store(0)",  "store(4)",  "load(8)",  "load(12)", "op(8)",
      "op(12)",   "store(8)",  "store(12)", "cleanup"};
  EXPECT_EQ(names, want);
}

TEST(CallTrace, RemainderOfTenWithTwoSlots) {
  DenseVector<float> x(10), y(10);
  const AssignNode root(to_target(y), y + 2.0f * x);
  const auto plan = plan_for<simd::SseBackend>(root, {.unroll = 2});
  EXPECT_EQ(plan.masked_length, 8u);
  const auto trace = call_trace<simd::SseBackend>(root, plan);
  std::vector<std::size_t> singles;
  int loads = 0;
  for (const auto& e : trace) {
    if (e.call == Call::single_op) singles.push_back(e.index);
    if (e.call == Call::load) ++loads;
  }
  EXPECT_EQ(singles, (std::vector<std::size_t>{8, 9}));
  EXPECT_EQ(loads, 2);  // one iteration, two slots
}
#endif

TEST(CallTrace, UnrollOneIsLoadOpStore) {
  DenseVector<float> x(3), y(3);
  const AssignNode root(to_target(y), 2.0f * x);
  const auto trace = call_trace<simd::ScalarBackend>(root, plan_for<simd::ScalarBackend>(root));
  std::vector<std::string> names;
  for (const auto& e : trace) names.push_back(to_string(e));
  const std::vector<std::string> want{"init",    "load_once", "load(0)", "op(0)",
                                      "store(0)", "load(1)",  "op(1)",   "store(1)",
                                      "load(2)", "op(2)",     "store(2)", "cleanup"};
  EXPECT_EQ(names, want);
}

template <class Backend>
void check_traces_against_model() {
  using V = simd::Lanes<float, Backend>;
  for (std::size_t len : {0u, 1u, 7u, 16u, 33u, 64u, 100u, 129u}) {
    DenseVector<float> x(len), y(len);
    const AssignNode axpy_root(to_target(y), y + 0.5f * x);
    const auto dot_root = dot_of(x, y);
    for (int u : {1, 2, 4, 8}) {
      for (int p : {1, 2, 4, 8}) {
        if (u % p != 0) continue;
        const PlanOverrides ovr{.unroll = u, .packages = p};
        const auto a = call_trace<Backend>(axpy_root, plan_for<Backend>(axpy_root, ovr));
        EXPECT_EQ(a, testing::expected_trace(u, p, V::width, len, false)) << len << " " << u;
        EXPECT_EQ(testing::check_burst_order(a, u, p), "");
        const auto d = call_trace<Backend>(dot_root, plan_for<Backend>(dot_root, ovr));
        EXPECT_EQ(d, testing::expected_trace(u, p, V::width, len, true)) << len << " " << u;
      }
    }
  }
}

TEST(CallTrace, MatchesModelScalar) { check_traces_against_model<simd::ScalarBackend>(); }
TEST(CallTrace, MatchesModelNative) { check_traces_against_model<simd::NativeBackend>(); }

TEST(CallTrace, BurstCheckerRejectsInterleaving) {
  std::vector<TraceEvent> bad{{Call::init, -1, 0},     {Call::load_once, 0, 0},
                              {Call::load_once, 1, 0}, {Call::load, 0, 0},
                              {Call::vector_op, 0, 0}, {Call::load, 1, 4},
                              {Call::vector_op, 1, 4}, {Call::store, 0, 0},
                              {Call::store, 1, 4},     {Call::cleanup, -1, 0}};
  EXPECT_NE(testing::check_burst_order(bad, 2, 1), "");
}

TEST(Execute, FigureOneExample) {
  const auto a = DenseVector<float>::from_values({1, 1, 1, 1, 1});
  const auto b = DenseVector<float>::from_values({5, 5, 5, 5, 5});
  const auto c = DenseVector<float>::from_values({1, 2, 3, 4, 5});
  for (int u : {1, 2, 4, 8}) {
    DenseVector<float> d(5);
    assign(d, a + (b - c), {.unroll = u});
    EXPECT_EQ(d.to_values(), (std::vector<float>{5, 4, 3, 2, 1}));
    DenseVector<float> e(5);
    assign<simd::ScalarBackend>(e, a + (b - c), {.unroll = u});
    EXPECT_EQ(e.to_values(), (std::vector<float>{5, 4, 3, 2, 1}));
  }
}

TEST(Execute, ZeroLengthStillRunsInitAndCleanup) {
  DenseVector<float> x(0), y(0);
  const AssignNode root(to_target(y), x + y);
  const auto trace = call_trace(root, plan_for<simd::NativeBackend>(root));
  ASSERT_GE(trace.size(), 2u);
  EXPECT_EQ(trace.front().call, Call::init);
  EXPECT_EQ(trace.back().call, Call::cleanup);
  for (const auto& e : trace) {
    EXPECT_NE(e.call, Call::load);
    EXPECT_NE(e.call, Call::single_op);
  }
  EXPECT_EQ(dot(x, y), 0.0f);
}

TEST(Execute, DotSmallExamples) {
  const auto x = DenseVector<float>::from_values({1, 2, 3});
  EXPECT_EQ(dot(x, x), 14.0f);
  EXPECT_EQ(dot<simd::ScalarBackend>(x, x), 14.0f);
  const auto z = DenseVector<double>::zeros(0);
  EXPECT_EQ(dot(z, z), 0.0);
}

template <class S>
void dot_against_left_to_right(double tol) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    // Same-sign data: relative error is well conditioned.
    const auto xv = testing::random_values<S>(1000, seed, S(0), S(1));
    const auto yv = testing::random_values<S>(1000, seed + 100, S(0), S(1));
    const auto x = DenseVector<S>::from_values(std::span<const S>(xv));
    const auto y = DenseVector<S>::from_values(std::span<const S>(yv));
    const double want = oracle::oracle_dot<S>(xv, yv);
    for (int u : {1, 2, 4, 8}) {
      const double got = dot(x, y, {.unroll = u});
      EXPECT_LE(std::abs(got - want) / std::abs(want), tol) << "seed " << seed << " U " << u;
    }
  }
}

TEST(Execute, DotMatchesLeftToRightF32) { dot_against_left_to_right<float>(1e-6); }
TEST(Execute, DotMatchesLeftToRightF64) { dot_against_left_to_right<double>(1e-12); }

template <class Backend, class S>
void elementwise_unroll_invariance() {
  for (std::size_t len = 0; len <= 129; ++len) {
    const auto a = testing::random_vector<S>(len, len * 7 + 1);
    const auto b = testing::random_vector<S>(len, len * 7 + 2);
    const auto c = testing::random_vector<S>(len, len * 7 + 3);
    // Scalar oracle for d = a + (b - c) * 0.75 - c * a.
    std::vector<S> want(len);
    for (std::size_t i = 0; i < len; ++i)
      want[i] = (a.get(i) + S(0.75) * (b.get(i) - c.get(i))) - c.get(i) * a.get(i);
    for (int u : {1, 2, 4, 8}) {
      for (int p : {1, u}) {
        DenseVector<S> d(len);
        assign<Backend>(d, (a + S(0.75) * (b - c)) - c * a, {.unroll = u, .packages = p});
        ASSERT_TRUE(testing::bit_equal<S>(d.span(), std::span<const S>(want)))
            << "len " << len << " U " << u << " P " << p;
      }
    }
  }
}

TEST(Execute, ElementwiseBitExactAcrossUnrollScalarF32) {
  elementwise_unroll_invariance<simd::ScalarBackend, float>();
}
TEST(Execute, ElementwiseBitExactAcrossUnrollNativeF32) {
  elementwise_unroll_invariance<simd::NativeBackend, float>();
}
TEST(Execute, ElementwiseBitExactAcrossUnrollNativeF64) {
  elementwise_unroll_invariance<simd::NativeBackend, double>();
}

TEST(Execute, SinglePassAccessCounts) {
  for (std::size_t len : {0u, 1u, 5u, 31u, 32u, 33u, 1000u}) {
    for (int u : {1, 2, 4, 8}) {
      CountingVector<float> a(testing::random_vector<float>(len, 1));
      CountingVector<float> b(testing::random_vector<float>(len, 2));
      CountingVector<float> d(len);
      assign(d, a + (b - a), {.unroll = u});
      // a occurs twice in the tree.
      EXPECT_EQ(a.reads(), 2 * len);
      EXPECT_EQ(b.reads(), len);
      EXPECT_EQ(d.reads(), 0u);
      EXPECT_EQ(d.writes(), len);
      a.reset_counts();
      b.reset_counts();
      (void)evaluate(dot_of(a, b), {.unroll = u});
      EXPECT_EQ(a.reads(), len);
      EXPECT_EQ(b.reads(), len);
    }
  }
}

TEST(Execute, ExactAliasingIsSafe) {
  auto x = DenseVector<float>::from_values({1, 2, 3, 4, 5, 6, 7, 8, 9});
  for (int u : {1, 2, 4, 8})
    for (int p : {1, u}) {
      auto y = x;
      assign(y, y * y + y, {.unroll = u, .packages = p});
      for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(y.get(i), x.get(i) * x.get(i) + x.get(i));
    }
}

}  // namespace
}  // namespace fusevec

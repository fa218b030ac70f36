// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "fusevec/blas.hpp"
#include "fusevec/dense_vector.hpp"
#include "test_support.hpp"

namespace fusevec {
namespace {

template <class S>
class DenseVectorTest : public ::testing::Test {};
using Scalars = ::testing::Types<float, double>;
TYPED_TEST_SUITE(DenseVectorTest, Scalars);

template <class S>
bool aligned_for_every_backend(const DenseVector<S>& v) {
  const auto addr = reinterpret_cast<std::uintptr_t>(v.data());
  return addr % simd::capabilities<S>().required_alignment == 0 &&
         addr % DenseVector<S>::kAlignment == 0;
}

TYPED_TEST(DenseVectorTest, ZerosHasRequestedLength) {
  using S = TypeParam;
  const auto v = DenseVector<S>::zeros(5);
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.to_values(), (std::vector<S>{0, 0, 0, 0, 0}));
  EXPECT_TRUE(aligned_for_every_backend(v));
}

TYPED_TEST(DenseVectorTest, ZeroLengthIsLegal) {
  using S = TypeParam;
  const auto z = DenseVector<S>::zeros(0);
  EXPECT_EQ(z.size(), 0u);
  EXPECT_TRUE(z.empty());
  const auto e = DenseVector<S>::from_values(std::span<const S>{});
  EXPECT_EQ(e.size(), 0u);
  EXPECT_TRUE(e.to_values().empty());
}

TYPED_TEST(DenseVectorTest, FreshVectorsAreAligned) {
  using S = TypeParam;
  for (std::size_t n = 1; n < 300; n += 7) {
    const DenseVector<S> v(n);
    EXPECT_TRUE(aligned_for_every_backend(v)) << n;
    const auto w = testing::random_vector<S>(n, n);
    EXPECT_TRUE(aligned_for_every_backend(w)) << n;
  }
}

TYPED_TEST(DenseVectorTest, FromValuesRoundTrip) {
  using S = TypeParam;
  EXPECT_EQ(DenseVector<S>::from_values({1, 2, 3}).get(1), S(2));
  for (std::size_t n : {0u, 1u, 3u, 17u, 1000u}) {
    const auto values = testing::random_values<S>(n, 99 + n);
    const auto v = DenseVector<S>::from_values(std::span<const S>(values));
    EXPECT_EQ(v.to_values(), values);
  }
}

TYPED_TEST(DenseVectorTest, SetReplacesOnlyOneElement) {
  using S = TypeParam;
  auto v = DenseVector<S>::from_values({1, 2, 3, 4});
  v.set(2, 7);
  EXPECT_EQ(v.get(2), S(7));
  EXPECT_EQ(v.to_values(), (std::vector<S>{1, 2, 7, 4}));
}

TYPED_TEST(DenseVectorTest, CopyIsDeepAndAligned) {
  using S = TypeParam;
  auto a = DenseVector<S>::from_values({1, 2, 3});
  DenseVector<S> b(a);
  b.set(0, 9);
  EXPECT_EQ(a.get(0), S(1));
  EXPECT_TRUE(aligned_for_every_backend(b));
}

TYPED_TEST(DenseVectorTest, CopyAssignmentRequiresEqualLength) {
  using S = TypeParam;
  auto a = DenseVector<S>::from_values({1, 2, 3});
  DenseVector<S> b(3);
  b = a;
  EXPECT_EQ(b.to_values(), a.to_values());
  DenseVector<S> c(4);
  EXPECT_THROW(c = a, LengthError);
}

TYPED_TEST(DenseVectorTest, ExpressionAssignment) {
  using S = TypeParam;
  auto a = DenseVector<S>::from_values({1, 1, 1, 1, 1});
  auto b = DenseVector<S>::from_values({5, 5, 5, 5, 5});
  auto c = DenseVector<S>::from_values({1, 2, 3, 4, 5});
  DenseVector<S> d(5);
  d = a + (b - c);
  EXPECT_EQ(d.to_values(), (std::vector<S>{5, 4, 3, 2, 1}));
}

using DenseVectorDeathTest = ::testing::Test;

TEST(DenseVectorDeathTest, GetOutOfBoundsFailsFast) {
  const auto v = DenseVector<float>::zeros(3);
  EXPECT_DEATH((void)v.get(3), "contract violation");
}

TEST(DenseVectorDeathTest, GetOnEmptyVectorFailsFast) {
  const auto v = DenseVector<double>::zeros(0);
  EXPECT_DEATH((void)v.get(0), "contract violation");
}

TEST(DenseVectorDeathTest, SetOutOfBoundsFailsFast) {
  auto v = DenseVector<float>::zeros(2);
  EXPECT_DEATH(v.set(5, 1.0f), "contract violation");
}

}  // namespace
}  // namespace fusevec

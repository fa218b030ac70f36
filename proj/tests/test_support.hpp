// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <span>
#include <type_traits>
#include <vector>

#include "fusevec/dense_vector.hpp"
#include "fusevec/simd_lanes.hpp"

namespace fusevec::testing {

template <class S, class B>
struct Config {
  using Scalar = S;
  using Backend = B;
};

template <class S>
std::vector<S> random_values(std::size_t n, std::uint64_t seed, S lo = S(-1), S hi = S(1)) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<S> dist(lo, hi);
  std::vector<S> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

template <class S>
DenseVector<S> random_vector(std::size_t n, std::uint64_t seed) {
  const auto v = random_values<S>(n, seed);
  return DenseVector<S>::from_values(std::span<const S>(v));
}

template <class S>
bool bit_equal(S a, S b) {
  using U = std::conditional_t<sizeof(S) == 4, std::uint32_t, std::uint64_t>;
  return std::bit_cast<U>(a) == std::bit_cast<U>(b);
}

template <class S>
bool bit_equal(std::span<const S> a, std::span<const S> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!bit_equal(a[i], b[i])) return false;
  return true;
}

/// Relative reduction tolerance: max(1e-6, 4 n eps) for f32,
/// max(1e-12, 4 n eps) for f64.
template <class S>
double reduction_tolerance(std::size_t n) {
  const double floor = std::is_same_v<S, float> ? 1e-6 : 1e-12;
  return std::max(floor, 4.0 * double(n) * double(std::numeric_limits<S>::epsilon()));
}

/// |got - want| relative to `scale` (the sum of magnitudes of the summed
/// terms; equals |want| when all terms share a sign). A zero scale demands
/// an exact match.
inline double relative_error(double got, double want, double scale) {
  const double diff = std::abs(got - want);
  if (scale == 0) return diff;
  return diff / scale;
}

}  // namespace fusevec::testing

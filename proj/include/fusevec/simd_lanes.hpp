// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Lane-vector abstraction ("vectorizer"). Expression nodes and loop templates
// only talk to Lanes<S, Backend>; everything instruction-set specific lives
// behind it. A scalar backend (one lane, not specialized) always exists; the
// SSE backend is compiled in when the target supports SSE2.

#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <type_traits>

#if defined(__SSE2__) || defined(_M_X64)
#define FUSEVEC_HAVE_SSE 1
#include <emmintrin.h>
#include <xmmintrin.h>
#else
#define FUSEVEC_HAVE_SSE 0
#endif

namespace fusevec::simd {

struct ScalarBackend {};
struct SseBackend {};

#if FUSEVEC_HAVE_SSE
using NativeBackend = SseBackend;
#else
using NativeBackend = ScalarBackend;
#endif

template <class S>
concept LaneScalar = std::is_same_v<S, float> || std::is_same_v<S, double>;

struct LaneCapabilities {
  std::size_t width;
  bool specialized;
  std::size_t required_alignment;
};

template <LaneScalar S, class Backend>
struct LaneVector;

template <LaneScalar S, class Backend>
struct Lanes;

// ---------------------------------------------------------------------------
// Scalar fallback: one lane, plain arithmetic.

template <LaneScalar S>
struct LaneVector<S, ScalarBackend> {
  S native{};

  S lane(std::size_t k) const {
    assert(k == 0);
    (void)k;
    return native;
  }
};

template <LaneScalar S>
struct Lanes<S, ScalarBackend> {
  using scalar_type = S;
  using vector_t = LaneVector<S, ScalarBackend>;
  static constexpr std::size_t width = 1;
  static constexpr bool specialized = false;
  static constexpr std::size_t required_alignment = sizeof(S);

  static vector_t splat(S value) { return {value}; }
  static vector_t load_aligned(const S* base, std::size_t offset) {
    return {base[offset]};
  }
  static void store_aligned(S* base, std::size_t offset, vector_t v) {
    base[offset] = v.native;
  }
  static vector_t add(vector_t a, vector_t b) { return {a.native + b.native}; }
  static vector_t sub(vector_t a, vector_t b) { return {a.native - b.native}; }
  static vector_t mul(vector_t a, vector_t b) { return {a.native * b.native}; }
  static vector_t neg(vector_t a) { return {-a.native}; }
  static S horizontal_sum(vector_t v) { return v.native; }
};

// ---------------------------------------------------------------------------
// SSE: 4 x f32, 2 x f64.

#if FUSEVEC_HAVE_SSE

template <>
struct LaneVector<float, SseBackend> {
  __m128 native = _mm_setzero_ps();

  float lane(std::size_t k) const {
    alignas(16) std::array<float, 4> tmp;
    _mm_store_ps(tmp.data(), native);
    return tmp[k];
  }
};

template <>
struct LaneVector<double, SseBackend> {
  __m128d native = _mm_setzero_pd();

  double lane(std::size_t k) const {
    alignas(16) std::array<double, 2> tmp;
    _mm_store_pd(tmp.data(), native);
    return tmp[k];
  }
};

template <>
struct Lanes<float, SseBackend> {
  using scalar_type = float;
  using vector_t = LaneVector<float, SseBackend>;
  static constexpr std::size_t width = 4;
  static constexpr bool specialized = true;
  static constexpr std::size_t required_alignment = 16;

  static vector_t splat(float value) { return {_mm_set1_ps(value)}; }
  static vector_t load_aligned(const float* base, std::size_t offset) {
    assert(reinterpret_cast<std::uintptr_t>(base + offset) % required_alignment == 0);
    return {_mm_load_ps(base + offset)};
  }
  static void store_aligned(float* base, std::size_t offset, vector_t v) {
    assert(reinterpret_cast<std::uintptr_t>(base + offset) % required_alignment == 0);
    _mm_store_ps(base + offset, v.native);
  }
  static vector_t add(vector_t a, vector_t b) { return {_mm_add_ps(a.native, b.native)}; }
  static vector_t sub(vector_t a, vector_t b) { return {_mm_sub_ps(a.native, b.native)}; }
  static vector_t mul(vector_t a, vector_t b) { return {_mm_mul_ps(a.native, b.native)}; }
  static vector_t neg(vector_t a) {
    return {_mm_xor_ps(a.native, _mm_set1_ps(-0.0f))};
  }
  // Sequential left-to-right over lanes; keeps results identical to a scalar
  // loop over the same four values.
  static float horizontal_sum(vector_t v) {
    alignas(16) std::array<float, 4> tmp;
    _mm_store_ps(tmp.data(), v.native);
    return ((tmp[0] + tmp[1]) + tmp[2]) + tmp[3];
  }
};

template <>
struct Lanes<double, SseBackend> {
  using scalar_type = double;
  using vector_t = LaneVector<double, SseBackend>;
  static constexpr std::size_t width = 2;
  static constexpr bool specialized = true;
  static constexpr std::size_t required_alignment = 16;

  static vector_t splat(double value) { return {_mm_set1_pd(value)}; }
  static vector_t load_aligned(const double* base, std::size_t offset) {
    assert(reinterpret_cast<std::uintptr_t>(base + offset) % required_alignment == 0);
    return {_mm_load_pd(base + offset)};
  }
  static void store_aligned(double* base, std::size_t offset, vector_t v) {
    assert(reinterpret_cast<std::uintptr_t>(base + offset) % required_alignment == 0);
    _mm_store_pd(base + offset, v.native);
  }
  static vector_t add(vector_t a, vector_t b) { return {_mm_add_pd(a.native, b.native)}; }
  static vector_t sub(vector_t a, vector_t b) { return {_mm_sub_pd(a.native, b.native)}; }
  static vector_t mul(vector_t a, vector_t b) { return {_mm_mul_pd(a.native, b.native)}; }
  static vector_t neg(vector_t a) {
    return {_mm_xor_pd(a.native, _mm_set1_pd(-0.0))};
  }
  static double horizontal_sum(vector_t v) {
    alignas(16) std::array<double, 2> tmp;
    _mm_store_pd(tmp.data(), v.native);
    return tmp[0] + tmp[1];
  }
};

#endif  // FUSEVEC_HAVE_SSE

template <class V>
constexpr LaneCapabilities capabilities_of() {
  return {V::width, V::specialized, V::required_alignment};
}

template <LaneScalar S, class Backend = NativeBackend>
constexpr LaneCapabilities capabilities() {
  return capabilities_of<Lanes<S, Backend>>();
}

}  // namespace fusevec::simd

// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#include "fusevec/fusevec.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <iostream>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "fusevec/bench.hpp"
#include "fusevec/blas.hpp"
#include "fusevec/errors.hpp"

using namespace fusevec;

struct fv_vector {
  std::variant<DenseVector<float>, DenseVector<double>> v;
};

struct fv_bench_config {
  bench::BenchConfig cfg;
};

struct fv_bench_results {
  std::vector<bench::BenchRecord> records;
};

namespace {

thread_local std::string g_last_error;

fv_status fail(fv_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class Fn>
fv_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    return fn();
  } catch (const LengthError& e) {
    return fail(FV_ERROR_LENGTH_MISMATCH, e.what());
  } catch (const ConfigError& e) {
    return fail(FV_ERROR_CONFIG, e.what());
  } catch (const IoError& e) {
    return fail(FV_ERROR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FV_ERROR_ALLOCATION, "allocation failed");
  } catch (const std::exception& e) {
    return fail(FV_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(FV_ERROR_INTERNAL, "unknown error");
  }
}

PlanOverrides to_overrides(const fv_exec_options* o) {
  PlanOverrides ovr;
  if (!o) return ovr;
  if (o->unroll != 0) ovr.unroll = o->unroll;
  if (o->packages != 0) ovr.packages = o->packages;
  if (o->register_budget != 0) ovr.register_budget = o->register_budget;
  return ovr;
}

bool valid_backend(const fv_exec_options* o) {
  return !o || o->backend == FV_BACKEND_NATIVE || o->backend == FV_BACKEND_SCALAR;
}

template <class Fn>
auto with_backend(const fv_exec_options* o, Fn&& fn) {
  if (o && o->backend == FV_BACKEND_SCALAR) return fn(simd::ScalarBackend{});
  return fn(simd::NativeBackend{});
}

bool same_dtype(const fv_vector* a, const fv_vector* b) { return a->v.index() == b->v.index(); }

#define FV_REQUIRE(cond, msg) \
  if (!(cond)) return fail(FV_ERROR_INVALID_ARGUMENT, msg)

// Converts a comma list setter failure into INVALID_ARGUMENT rather than
// CONFIG: these are user-typed names.
template <class Fn>
fv_status parse_names(Fn&& fn) {
  return guarded([&]() -> fv_status {
    try {
      fn();
    } catch (const ConfigError& e) {
      return fail(FV_ERROR_INVALID_ARGUMENT, e.what());
    }
    return FV_OK;
  });
}

}  // namespace

extern "C" {

const char* fv_last_error(void) { return g_last_error.c_str(); }

const char* fv_status_string(fv_status status) {
  switch (status) {
    case FV_OK: return "ok";
    case FV_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case FV_ERROR_LENGTH_MISMATCH: return "length mismatch";
    case FV_ERROR_CONFIG: return "configuration error";
    case FV_ERROR_OUT_OF_RANGE: return "index out of range";
    case FV_ERROR_ALLOCATION: return "allocation failure";
    case FV_ERROR_IO: return "i/o error";
    case FV_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fv_status fv_lane_capabilities(fv_dtype dtype, fv_backend backend, fv_lane_caps* out) {
  FV_REQUIRE(out, "null output");
  FV_REQUIRE(dtype == FV_F32 || dtype == FV_F64, "unknown dtype");
  FV_REQUIRE(backend == FV_BACKEND_NATIVE || backend == FV_BACKEND_SCALAR, "unknown backend");
  simd::LaneCapabilities c{};
  if (backend == FV_BACKEND_SCALAR)
    c = dtype == FV_F32 ? simd::capabilities<float, simd::ScalarBackend>()
                        : simd::capabilities<double, simd::ScalarBackend>();
  else
    c = dtype == FV_F32 ? simd::capabilities<float>() : simd::capabilities<double>();
  *out = {c.width, c.specialized ? 1 : 0, c.required_alignment};
  return FV_OK;
}

fv_status fv_select_plan(int footprint, size_t length, fv_dtype dtype,
                         const fv_exec_options* options, fv_unroll_plan* out) {
  FV_REQUIRE(out, "null output");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  fv_lane_caps caps{};
  if (fv_status s = fv_lane_capabilities(dtype, options ? options->backend : FV_BACKEND_NATIVE,
                                         &caps);
      s != FV_OK)
    return s;
  return guarded([&] {
    const UnrollPlan p = select_plan(footprint, length,
                                     {caps.width, caps.specialized != 0, caps.required_alignment},
                                     to_overrides(options));
    *out = {p.unroll, p.width, p.packages, p.masked_length};
    return FV_OK;
  });
}

fv_status fv_vector_create(fv_dtype dtype, size_t length, fv_vector** out) {
  FV_REQUIRE(out, "null output");
  FV_REQUIRE(dtype == FV_F32 || dtype == FV_F64, "unknown dtype");
  return guarded([&] {
    if (dtype == FV_F32)
      *out = new fv_vector{DenseVector<float>(length)};
    else
      *out = new fv_vector{DenseVector<double>(length)};
    return FV_OK;
  });
}

fv_status fv_vector_from_f32(const float* values, size_t length, fv_vector** out) {
  FV_REQUIRE(out, "null output");
  FV_REQUIRE(values || length == 0, "null values");
  return guarded([&] {
    *out = new fv_vector{DenseVector<float>::from_values(std::span<const float>(values, length))};
    return FV_OK;
  });
}

fv_status fv_vector_from_f64(const double* values, size_t length, fv_vector** out) {
  FV_REQUIRE(out, "null output");
  FV_REQUIRE(values || length == 0, "null values");
  return guarded([&] {
    *out =
        new fv_vector{DenseVector<double>::from_values(std::span<const double>(values, length))};
    return FV_OK;
  });
}

void fv_vector_free(fv_vector* v) { delete v; }

size_t fv_vector_length(const fv_vector* v) {
  if (!v) return 0;
  return std::visit([](const auto& d) { return d.size(); }, v->v);
}

fv_dtype fv_vector_dtype(const fv_vector* v) {
  return (v && v->v.index() == 1) ? FV_F64 : FV_F32;
}

fv_status fv_vector_get(const fv_vector* v, size_t index, double* out) {
  FV_REQUIRE(v && out, "null argument");
  if (index >= fv_vector_length(v))
    return fail(FV_ERROR_OUT_OF_RANGE, "index " + std::to_string(index) + " out of range");
  *out = std::visit([&](const auto& d) { return double(d.get(index)); }, v->v);
  return FV_OK;
}

fv_status fv_vector_set(fv_vector* v, size_t index, double value) {
  FV_REQUIRE(v, "null argument");
  if (index >= fv_vector_length(v))
    return fail(FV_ERROR_OUT_OF_RANGE, "index " + std::to_string(index) + " out of range");
  std::visit(
      [&](auto& d) {
        using S = typename std::remove_cvref_t<decltype(d)>::value_type;
        d.set(index, S(value));
      },
      v->v);
  return FV_OK;
}

fv_status fv_vector_read_f32(const fv_vector* v, float* out, size_t length) {
  FV_REQUIRE(v && (out || length == 0), "null argument");
  FV_REQUIRE(v->v.index() == 0, "vector is not f32");
  const auto& d = std::get<0>(v->v);
  if (length != d.size()) return fail(FV_ERROR_LENGTH_MISMATCH, "buffer length mismatch");
  std::copy_n(d.data(), length, out);
  return FV_OK;
}

fv_status fv_vector_read_f64(const fv_vector* v, double* out, size_t length) {
  FV_REQUIRE(v && (out || length == 0), "null argument");
  FV_REQUIRE(v->v.index() == 1, "vector is not f64");
  const auto& d = std::get<1>(v->v);
  if (length != d.size()) return fail(FV_ERROR_LENGTH_MISMATCH, "buffer length mismatch");
  std::copy_n(d.data(), length, out);
  return FV_OK;
}

fv_status fv_dot(const fv_vector* x, const fv_vector* y, const fv_exec_options* options,
                 double* out) {
  FV_REQUIRE(x && y && out, "null argument");
  FV_REQUIRE(same_dtype(x, y), "operands have different dtypes");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    *out = std::visit(
        [&](const auto& xv) -> double {
          using Vec = std::remove_cvref_t<decltype(xv)>;
          const auto& yv = std::get<Vec>(y->v);
          return with_backend(options, [&]<class B>(B) { return double(dot<B>(xv, yv, ovr)); });
        },
        x->v);
    return FV_OK;
  });
}

fv_status fv_scal(double alpha, fv_vector* x, const fv_exec_options* options) {
  FV_REQUIRE(x, "null argument");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    std::visit(
        [&](auto& xv) {
          using S = typename std::remove_cvref_t<decltype(xv)>::value_type;
          with_backend(options, [&]<class B>(B) { scal<B>(S(alpha), xv, ovr); });
        },
        x->v);
    return FV_OK;
  });
}

fv_status fv_axpy(double alpha, const fv_vector* x, fv_vector* y,
                  const fv_exec_options* options) {
  FV_REQUIRE(x && y, "null argument");
  FV_REQUIRE(same_dtype(x, y), "operands have different dtypes");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    std::visit(
        [&](auto& yv) {
          using Vec = std::remove_cvref_t<decltype(yv)>;
          using S = typename Vec::value_type;
          const auto& xv = std::get<Vec>(x->v);
          with_backend(options, [&]<class B>(B) { axpy<B>(S(alpha), xv, yv, ovr); });
        },
        y->v);
    return FV_OK;
  });
}

fv_status fv_scaled_copy(double alpha, const fv_vector* x, fv_vector* out,
                         const fv_exec_options* options) {
  FV_REQUIRE(x && out, "null argument");
  FV_REQUIRE(x != out, "scaled_copy destination must differ from the source");
  FV_REQUIRE(same_dtype(x, out), "operands have different dtypes");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    std::visit(
        [&](auto& ov) {
          using Vec = std::remove_cvref_t<decltype(ov)>;
          using S = typename Vec::value_type;
          const auto& xv = std::get<Vec>(x->v);
          with_backend(options, [&]<class B>(B) { scaled_copy<B>(S(alpha), xv, ov, ovr); });
        },
        out->v);
    return FV_OK;
  });
}

fv_status fv_sum(const fv_vector* x, const fv_exec_options* options, double* out) {
  FV_REQUIRE(x && out, "null argument");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    *out = std::visit(
        [&](const auto& xv) -> double {
          return with_backend(options, [&]<class B>(B) { return double(sum<B>(xv, ovr)); });
        },
        x->v);
    return FV_OK;
  });
}

fv_status fv_norm2(const fv_vector* x, const fv_exec_options* options, double* out) {
  FV_REQUIRE(x && out, "null argument");
  FV_REQUIRE(valid_backend(options), "unknown backend");
  return guarded([&] {
    const auto ovr = to_overrides(options);
    *out = std::visit(
        [&](const auto& xv) -> double {
          return with_backend(options, [&]<class B>(B) { return double(norm2<B>(xv, ovr)); });
        },
        x->v);
    return FV_OK;
  });
}

fv_status fv_bench_config_create(fv_bench_config** out) {
  FV_REQUIRE(out, "null output");
  return guarded([&] {
    *out = new fv_bench_config{};
    return FV_OK;
  });
}

void fv_bench_config_free(fv_bench_config* cfg) { delete cfg; }

fv_status fv_bench_config_set_ops(fv_bench_config* cfg, const char* ops) {
  FV_REQUIRE(cfg && ops, "null argument");
  return parse_names([&] { cfg->cfg.ops = bench::parse_ops(ops); });
}

fv_status fv_bench_config_set_variants(fv_bench_config* cfg, const char* variants) {
  FV_REQUIRE(cfg && variants, "null argument");
  return parse_names([&] {
    std::vector<std::string> names;
    std::string_view rest(variants);
    for (;;) {
      const auto pos = rest.find(',');
      std::string item(rest.substr(0, pos));
      if (!item.empty()) {
        bench::validate_variant(item);
        names.push_back(std::move(item));
      }
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (names.empty()) throw ConfigError("no variants given");
    cfg->cfg.variants = std::move(names);
  });
}

fv_status fv_bench_config_set_sizes(fv_bench_config* cfg, const char* sizes) {
  FV_REQUIRE(cfg && sizes, "null argument");
  return parse_names([&] { cfg->cfg.sizes = bench::parse_sizes(sizes); });
}

fv_status fv_bench_config_set_type(fv_bench_config* cfg, const char* type) {
  FV_REQUIRE(cfg && type, "null argument");
  return parse_names([&] { cfg->cfg.type = bench::parse_type(type); });
}

fv_status fv_bench_config_set_reps(fv_bench_config* cfg, int reps) {
  FV_REQUIRE(cfg, "null argument");
  FV_REQUIRE(reps >= 1, "reps must be at least 1");
  cfg->cfg.reps = reps;
  return FV_OK;
}

fv_status fv_bench_config_set_warmup(fv_bench_config* cfg, int warmup) {
  FV_REQUIRE(cfg, "null argument");
  FV_REQUIRE(warmup >= 0, "warmup must not be negative");
  cfg->cfg.warmup = warmup;
  return FV_OK;
}

fv_status fv_bench_config_set_seed(fv_bench_config* cfg, uint64_t seed) {
  FV_REQUIRE(cfg, "null argument");
  cfg->cfg.seed = seed;
  return FV_OK;
}

fv_status fv_bench_config_set_packages(fv_bench_config* cfg, int packages) {
  FV_REQUIRE(cfg, "null argument");
  if (packages == 0) {
    cfg->cfg.packages.reset();
    return FV_OK;
  }
  FV_REQUIRE(packages == 1 || packages == 2 || packages == 4 || packages == 8,
             "packages must be one of 1, 2, 4, 8");
  cfg->cfg.packages = packages;
  return FV_OK;
}

fv_status fv_bench_run(const fv_bench_config* cfg, fv_bench_results** out) {
  FV_REQUIRE(cfg && out, "null argument");
  return guarded([&] {
    auto res = std::make_unique<fv_bench_results>();
    res->records = bench::run_sweep(cfg->cfg);
    *out = res.release();
    return FV_OK;
  });
}

size_t fv_bench_results_count(const fv_bench_results* res) {
  return res ? res->records.size() : 0;
}

fv_status fv_bench_results_get(const fv_bench_results* res, size_t index, fv_bench_record* out) {
  FV_REQUIRE(res && out, "null argument");
  if (index >= res->records.size()) return fail(FV_ERROR_OUT_OF_RANGE, "record index out of range");
  const auto& r = res->records[index];
  *out = {r.op.c_str(), r.variant.c_str(), r.type.c_str(), r.n, r.reps,
          r.best_s, r.median_s, r.gflops, r.gbytes};
  return FV_OK;
}

fv_status fv_bench_results_write_csv(const fv_bench_results* res, const char* path) {
  FV_REQUIRE(res, "null argument");
  return guarded([&] {
    if (!path || std::strcmp(path, "-") == 0) {
      bench::emit_csv(res->records, std::cout);
      std::cout.flush();
      if (!std::cout) throw IoError("failed writing to stdout");
    } else {
      bench::write_csv(res->records, path);
    }
    return FV_OK;
  });
}

void fv_bench_results_free(fv_bench_results* res) { delete res; }

}  // extern "C"

/* Copyright 2026 The fusevec Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to fusevec. All objects are opaque handles owned by the caller
 * and released with the matching *_free function. Every fallible call
 * returns an fv_status; on failure fv_last_error() describes the cause for
 * the calling thread.
 */

#ifndef FUSEVEC_FUSEVEC_H
#define FUSEVEC_FUSEVEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FUSEVEC_BUILDING_LIBRARY)
#define FV_API __declspec(dllexport)
#else
#define FV_API __declspec(dllimport)
#endif
#else
#define FV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fv_status {
  FV_OK = 0,
  FV_ERROR_INVALID_ARGUMENT = 1, /* null handle, unknown name, dtype mix */
  FV_ERROR_LENGTH_MISMATCH = 2,
  FV_ERROR_CONFIG = 3,           /* unsupported unroll/package/budget */
  FV_ERROR_OUT_OF_RANGE = 4,
  FV_ERROR_ALLOCATION = 5,
  FV_ERROR_IO = 6,
  FV_ERROR_INTERNAL = 7
} fv_status;

typedef enum fv_dtype { FV_F32 = 0, FV_F64 = 1 } fv_dtype;

typedef enum fv_backend {
  FV_BACKEND_NATIVE = 0, /* SIMD when compiled in, otherwise scalar */
  FV_BACKEND_SCALAR = 1
} fv_backend;

typedef struct fv_lane_caps {
  size_t width;
  int specialized;
  size_t required_alignment;
} fv_lane_caps;

/* Zero in unroll, packages or register_budget selects the automatic value. */
typedef struct fv_exec_options {
  fv_backend backend;
  int unroll;
  int packages;
  int register_budget;
} fv_exec_options;

typedef struct fv_unroll_plan {
  int unroll;
  size_t width;
  int packages;
  size_t masked_length;
} fv_unroll_plan;

typedef struct fv_vector fv_vector;

FV_API const char* fv_last_error(void);
FV_API const char* fv_status_string(fv_status status);

FV_API fv_status fv_lane_capabilities(fv_dtype dtype, fv_backend backend, fv_lane_caps* out);
FV_API fv_status fv_select_plan(int footprint, size_t length, fv_dtype dtype,
                                const fv_exec_options* options, fv_unroll_plan* out);

/* Vectors. Lengths are fixed at creation; storage is zero-initialized. */
FV_API fv_status fv_vector_create(fv_dtype dtype, size_t length, fv_vector** out);
FV_API fv_status fv_vector_from_f32(const float* values, size_t length, fv_vector** out);
FV_API fv_status fv_vector_from_f64(const double* values, size_t length, fv_vector** out);
FV_API void fv_vector_free(fv_vector* v);
FV_API size_t fv_vector_length(const fv_vector* v);
FV_API fv_dtype fv_vector_dtype(const fv_vector* v);
FV_API fv_status fv_vector_get(const fv_vector* v, size_t index, double* out);
FV_API fv_status fv_vector_set(fv_vector* v, size_t index, double value);
FV_API fv_status fv_vector_read_f32(const fv_vector* v, float* out, size_t length);
FV_API fv_status fv_vector_read_f64(const fv_vector* v, double* out, size_t length);

/* Level-1 operations. options may be NULL. Scalars are converted to the
 * vectors' element type. */
FV_API fv_status fv_dot(const fv_vector* x, const fv_vector* y,
                        const fv_exec_options* options, double* out);
FV_API fv_status fv_scal(double alpha, fv_vector* x, const fv_exec_options* options);
FV_API fv_status fv_axpy(double alpha, const fv_vector* x, fv_vector* y,
                         const fv_exec_options* options);
FV_API fv_status fv_scaled_copy(double alpha, const fv_vector* x, fv_vector* out,
                                const fv_exec_options* options);
FV_API fv_status fv_sum(const fv_vector* x, const fv_exec_options* options, double* out);
FV_API fv_status fv_norm2(const fv_vector* x, const fv_exec_options* options, double* out);

/* Benchmark sweeps. */
typedef struct fv_bench_config fv_bench_config;
typedef struct fv_bench_results fv_bench_results;

typedef struct fv_bench_record {
  const char* op;      /* valid while the owning results handle lives */
  const char* variant;
  const char* type;
  size_t n;
  int reps;
  double best_s;
  double median_s;
  double gflops;
  double gbytes;
} fv_bench_record;

FV_API fv_status fv_bench_config_create(fv_bench_config** out);
FV_API void fv_bench_config_free(fv_bench_config* cfg);
/* Comma separated lists. Unknown names yield FV_ERROR_INVALID_ARGUMENT. */
FV_API fv_status fv_bench_config_set_ops(fv_bench_config* cfg, const char* ops);
FV_API fv_status fv_bench_config_set_variants(fv_bench_config* cfg, const char* variants);
FV_API fv_status fv_bench_config_set_sizes(fv_bench_config* cfg, const char* sizes);
FV_API fv_status fv_bench_config_set_type(fv_bench_config* cfg, const char* type);
FV_API fv_status fv_bench_config_set_reps(fv_bench_config* cfg, int reps);
FV_API fv_status fv_bench_config_set_warmup(fv_bench_config* cfg, int warmup);
FV_API fv_status fv_bench_config_set_seed(fv_bench_config* cfg, uint64_t seed);
/* 0 restores the default (one slot per package). */
FV_API fv_status fv_bench_config_set_packages(fv_bench_config* cfg, int packages);

FV_API fv_status fv_bench_run(const fv_bench_config* cfg, fv_bench_results** out);
FV_API size_t fv_bench_results_count(const fv_bench_results* res);
FV_API fv_status fv_bench_results_get(const fv_bench_results* res, size_t index,
                                      fv_bench_record* out);
/* path NULL or "-" writes to stdout. */
FV_API fv_status fv_bench_results_write_csv(const fv_bench_results* res, const char* path);
FV_API void fv_bench_results_free(fv_bench_results* res);

#ifdef __cplusplus
}
#endif

#endif /* FUSEVEC_FUSEVEC_H */

// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// Throughput sweeps over the level-1 operations. Each (op, variant, size)
// cell gets freshly seeded data, a warmup, and `reps` timed repetitions; a
// repetition times a batch of calls sized so short vectors still run long
// enough to be measurable.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fusevec::bench {

enum class Op { dot, scal, axpy, scaled_copy };
enum class ElementType { f32, f64 };

inline constexpr std::string_view kCsvHeader =
    "op,variant,type,n,reps,best_s,median_s,gflops,gbytes";

/// Minimum element count processed per timed repetition.
inline constexpr std::size_t kBatchElements = std::size_t{1} << 16;

std::string_view op_name(Op op);
std::string_view type_name(ElementType t);
std::size_t scalar_size(ElementType t);

Op parse_op(std::string_view name);
/// Comma separated op names, or "all".
std::vector<Op> parse_ops(std::string_view list);
ElementType parse_type(std::string_view name);
/// Accepts engine, naive, engine-U1, engine-U2, engine-U4, engine-U8.
void validate_variant(std::string_view name);
/// Comma separated positive sizes, or "default".
std::vector<std::size_t> parse_sizes(std::string_view list);

/// Powers of two 2^6..2^22, each with its neighbours -1 and +1.
std::vector<std::size_t> default_sizes();

double flop_count(Op op, std::size_t n);
double bytes_moved(Op op, std::size_t n, std::size_t scalar_bytes);

struct BenchConfig {
  std::vector<Op> ops{Op::dot, Op::scal, Op::axpy, Op::scaled_copy};
  std::vector<std::string> variants{"engine", "naive"};
  std::vector<std::size_t> sizes = default_sizes();
  ElementType type = ElementType::f32;
  int reps = 25;
  int warmup = 5;
  std::uint64_t seed = 42;
  /// Packages per iteration for engine variants; clamped to the unroll factor.
  std::optional<int> packages;
};

struct BenchRecord {
  std::string op;
  std::string variant;
  std::string type;
  std::size_t n = 0;
  int reps = 0;
  double best_s = 0;
  double median_s = 0;
  double gflops = 0;
  double gbytes = 0;
};

/// Throws ConfigError on unknown variants, non-positive sizes or counts.
void validate(const BenchConfig& config);

/// One record per op x variant x size, in that nesting order.
std::vector<BenchRecord> run_sweep(const BenchConfig& config);

void emit_csv(std::span<const BenchRecord> records, std::ostream& out);
/// Throws IoError when the file cannot be written.
void write_csv(std::span<const BenchRecord> records, const std::filesystem::path& path);
std::vector<BenchRecord> parse_csv(std::istream& in);

/// Deterministic uniform [-1, 1) fill used for benchmark inputs.
void fill_random(std::span<float> out, std::uint64_t seed);
void fill_random(std::span<double> out, std::uint64_t seed);

}  // namespace fusevec::bench

// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0

#include "fusevec/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <system_error>

#include "fusevec/blas.hpp"
#include "fusevec/errors.hpp"
#include "fusevec/reference_oracle.hpp"

namespace fusevec::bench {
namespace {

template <class T>
inline void do_not_optimize(const T& value) {
#if defined(__GNUC__)
  asm volatile("" : : "r,m"(value) : "memory");
#else
  static volatile T sink;
  sink = value;
#endif
}

inline void clobber_memory() {
#if defined(__GNUC__)
  asm volatile("" : : : "memory");
#endif
}

std::vector<std::string_view> split(std::string_view list) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    std::string_view item = list.substr(start, end - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) parts.push_back(item);
    start = end + 1;
  }
  return parts;
}

struct VariantSpec {
  bool naive = false;
  std::optional<int> unroll;
};

VariantSpec variant_spec(std::string_view name) {
  if (name == "naive") return {true, std::nullopt};
  if (name == "engine") return {false, std::nullopt};
  if (name == "engine-U1") return {false, 1};
  if (name == "engine-U2") return {false, 2};
  if (name == "engine-U4") return {false, 4};
  if (name == "engine-U8") return {false, 8};
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Clock = std::chrono::steady_clock;

struct Timing {
  double best = 0;
  double median = 0;
};

// Times `reps` batches of `batch` calls each; returns per-call seconds.
template <class Fn>
Timing time_calls(Fn&& fn, int warmup, int reps, std::size_t batch) {
  for (int w = 0; w < warmup; ++w)
    for (std::size_t k = 0; k < batch; ++k) fn();

  std::vector<double> samples;
  samples.reserve(std::size_t(reps));
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    for (std::size_t k = 0; k < batch; ++k) fn();
    const auto t1 = Clock::now();
    const double s = std::chrono::duration<double>(t1 - t0).count() / double(batch);
    samples.push_back(std::max(s, 1e-12));
  }
  std::sort(samples.begin(), samples.end());
  Timing t;
  t.best = samples.front();
  const std::size_t m = samples.size();
  t.median = (m % 2 == 1) ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
  return t;
}

template <class Root>
UnrollPlan bench_plan(const Root& root, const VariantSpec& v, std::optional<int> packages) {
  PlanOverrides ovr;
  ovr.unroll = v.unroll;
  UnrollPlan plan = plan_for<simd::NativeBackend>(root, ovr);
  if (packages) {
    ovr.packages = std::min(*packages, plan.unroll);
    plan = plan_for<simd::NativeBackend>(root, ovr);
  }
  return plan;
}

template <class S>
Timing run_cell(Op op, const VariantSpec& v, std::size_t n, const BenchConfig& cfg) {
  DenseVector<S> x(n), y(n);
  fill_random(x.span(), cfg.seed ^ (std::uint64_t(n) * 0x9e3779b97f4a7c15ULL));
  fill_random(y.span(), cfg.seed ^ (std::uint64_t(n) * 0xc2b2ae3d27d4eb4fULL + 1));
  const std::size_t batch = std::max<std::size_t>(1, kBatchElements / n);

  switch (op) {
    case Op::dot: {
      if (v.naive) {
        return time_calls(
            [&] {
              clobber_memory();
              do_not_optimize(oracle::oracle_dot<S>(x.span(), y.span()));
            },
            cfg.warmup, cfg.reps, batch);
      }
      const auto root = dot_of(x, y);
      const auto plan = bench_plan(root, v, cfg.packages);
      return time_calls(
          [&] {
            clobber_memory();
            do_not_optimize(execute_reduce<simd::NativeBackend>(root, plan));
          },
          cfg.warmup, cfg.reps, batch);
    }
    case Op::scal: {
      const S alpha = S(1.0001);
      if (v.naive) {
        return time_calls(
            [&] {
              oracle::oracle_scal<S>(alpha, x.span());
              clobber_memory();
            },
            cfg.warmup, cfg.reps, batch);
      }
      const AssignNode root(to_target(x), to_node(alpha * x));
      const auto plan = bench_plan(root, v, cfg.packages);
      return time_calls(
          [&] {
            execute_assign<simd::NativeBackend>(root, plan);
            clobber_memory();
          },
          cfg.warmup, cfg.reps, batch);
    }
    case Op::axpy: {
      const S alpha = S(1e-3);
      if (v.naive) {
        return time_calls(
            [&] {
              oracle::oracle_axpy<S>(alpha, x.span(), y.span());
              clobber_memory();
            },
            cfg.warmup, cfg.reps, batch);
      }
      const AssignNode root(to_target(y), to_node(y + alpha * x));
      const auto plan = bench_plan(root, v, cfg.packages);
      return time_calls(
          [&] {
            execute_assign<simd::NativeBackend>(root, plan);
            clobber_memory();
          },
          cfg.warmup, cfg.reps, batch);
    }
    case Op::scaled_copy: {
      const S alpha = S(1.5);
      if (v.naive) {
        return time_calls(
            [&] {
              oracle::oracle_scaled_copy<S>(alpha, x.span(), y.span());
              clobber_memory();
            },
            cfg.warmup, cfg.reps, batch);
      }
      const AssignNode root(to_target(y), to_node(alpha * x));
      const auto plan = bench_plan(root, v, cfg.packages);
      return time_calls(
          [&] {
            execute_assign<simd::NativeBackend>(root, plan);
            clobber_memory();
          },
          cfg.warmup, cfg.reps, batch);
    }
  }
  return {};
}

}  // namespace

std::string_view op_name(Op op) {
  switch (op) {
    case Op::dot: return "dot";
    case Op::scal: return "scal";
    case Op::axpy: return "axpy";
    case Op::scaled_copy: return "scaled_copy";
  }
  return "?";
}

std::string_view type_name(ElementType t) { return t == ElementType::f32 ? "f32" : "f64"; }

std::size_t scalar_size(ElementType t) { return t == ElementType::f32 ? 4 : 8; }

Op parse_op(std::string_view name) {
  for (Op op : {Op::dot, Op::scal, Op::axpy, Op::scaled_copy})
    if (name == op_name(op)) return op;
  throw ConfigError("unknown op '" + std::string(name) + "'");
}

std::vector<Op> parse_ops(std::string_view list) {
  std::vector<Op> ops;
  for (auto item : split(list)) {
    if (item == "all") {
      for (Op op : {Op::dot, Op::scal, Op::axpy, Op::scaled_copy}) ops.push_back(op);
    } else {
      ops.push_back(parse_op(item));
    }
  }
  if (ops.empty()) throw ConfigError("no ops given");
  return ops;
}

ElementType parse_type(std::string_view name) {
  if (name == "f32") return ElementType::f32;
  if (name == "f64") return ElementType::f64;
  throw ConfigError("unknown type '" + std::string(name) + "'");
}

void validate_variant(std::string_view name) { variant_spec(name); }

std::vector<std::size_t> parse_sizes(std::string_view list) {
  if (list == "default") return default_sizes();
  std::vector<std::size_t> sizes;
  for (auto item : split(list)) {
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || v == 0)
      throw ConfigError("invalid size '" + std::string(item) + "'");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw ConfigError("no sizes given");
  return sizes;
}

std::vector<std::size_t> default_sizes() {
  std::vector<std::size_t> sizes;
  for (int e = 6; e <= 22; ++e) {
    const std::size_t p = std::size_t{1} << e;
    sizes.insert(sizes.end(), {p - 1, p, p + 1});
  }
  return sizes;
}

double flop_count(Op op, std::size_t n) {
  switch (op) {
    case Op::dot:
    case Op::axpy:
      return 2.0 * double(n);
    case Op::scal:
    case Op::scaled_copy:
      return double(n);
  }
  return 0;
}

double bytes_moved(Op op, std::size_t n, std::size_t scalar_bytes) {
  const double s = double(scalar_bytes);
  switch (op) {
    case Op::dot:
    case Op::scal:
    case Op::scaled_copy:
      return 2.0 * double(n) * s;
    case Op::axpy:
      return 3.0 * double(n) * s;
  }
  return 0;
}

void validate(const BenchConfig& config) {
  if (config.ops.empty()) throw ConfigError("no ops given");
  if (config.variants.empty()) throw ConfigError("no variants given");
  for (const auto& v : config.variants) validate_variant(v);
  if (config.sizes.empty()) throw ConfigError("no sizes given");
  for (auto n : config.sizes)
    if (n == 0) throw ConfigError("sizes must be positive");
  if (config.reps < 1) throw ConfigError("reps must be at least 1");
  if (config.warmup < 0) throw ConfigError("warmup must not be negative");
  if (config.packages && !(*config.packages == 1 || *config.packages == 2 ||
                           *config.packages == 4 || *config.packages == 8))
    throw ConfigError("packages must be one of 1, 2, 4, 8");
}

std::vector<BenchRecord> run_sweep(const BenchConfig& config) {
  validate(config);
  std::vector<BenchRecord> records;
  records.reserve(config.ops.size() * config.variants.size() * config.sizes.size());
  for (Op op : config.ops) {
    for (const auto& variant : config.variants) {
      const VariantSpec spec = variant_spec(variant);
      for (std::size_t n : config.sizes) {
        const Timing t = config.type == ElementType::f32
                             ? run_cell<float>(op, spec, n, config)
                             : run_cell<double>(op, spec, n, config);
        BenchRecord r;
        r.op = op_name(op);
        r.variant = variant;
        r.type = type_name(config.type);
        r.n = n;
        r.reps = config.reps;
        r.best_s = t.best;
        r.median_s = t.median;
        r.gflops = flop_count(op, n) / t.best / 1e9;
        r.gbytes = bytes_moved(op, n, scalar_size(config.type)) / t.best / 1e9;
        records.push_back(std::move(r));
      }
    }
  }
  return records;
}

void emit_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.op << ',' << r.variant << ',' << r.type << ',' << r.n << ',' << r.reps << ','
        << format_double(r.best_s) << ',' << format_double(r.median_s) << ','
        << format_double(r.gflops) << ',' << format_double(r.gbytes) << '\n';
  }
}

void write_csv(std::span<const BenchRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  emit_csv(records, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<BenchRecord> parse_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ConfigError("CSV header mismatch");
  auto parse_num = [](std::string_view s, auto& out) {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ConfigError("bad CSV field '" + std::string(s) + "'");
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (;;) {
      const auto pos = rest.find(',');
      f.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    if (f.size() != 9) throw ConfigError("CSV row must have 9 fields");
    BenchRecord r;
    r.op = f[0];
    r.variant = f[1];
    r.type = f[2];
    parse_num(f[3], r.n);
    parse_num(f[4], r.reps);
    parse_num(f[5], r.best_s);
    parse_num(f[6], r.median_s);
    parse_num(f[7], r.gflops);
    parse_num(f[8], r.gbytes);
    records.push_back(std::move(r));
  }
  return records;
}

void fill_random(std::span<float> out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  for (auto& v : out) v = dist(rng);
}

void fill_random(std::span<double> out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto& v : out) v = dist(rng);
}

}  // namespace fusevec::bench

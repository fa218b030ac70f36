// Copyright 2026 The fusevec Authors
// SPDX-License-Identifier: Apache-2.0
//
// bench: level-1 throughput sweeps, written as CSV.
//
//   bench --op dot --variants engine,naive,engine-U1 --sizes 256,4096 --csv out.csv

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fusevec/fusevec.h"

namespace {

struct ConfigHandle {
  fv_bench_config* p = nullptr;
  ~ConfigHandle() { fv_bench_config_free(p); }
};

struct ResultsHandle {
  fv_bench_results* p = nullptr;
  ~ResultsHandle() { fv_bench_results_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-1 vector kernel throughput sweeps"};
  app.name("bench");

  std::string ops = "all";
  std::string type = "f32";
  std::string variants = "engine,naive";
  std::string sizes = "default";
  int reps = 25;
  int warmup = 5;
  std::uint64_t seed = 42;
  std::string csv = "-";
  int packages = 0;
  std::string cache_sizes;

  app.add_option("--op", ops, "dot|scal|axpy|scaled_copy|all, or a comma list")
      ->capture_default_str();
  app.add_option("--type", type, "f32|f64")->capture_default_str();
  app.add_option("--variants", variants,
                 "comma list of engine,naive,engine-U1,engine-U2,engine-U4,engine-U8")
      ->capture_default_str();
  app.add_option("--sizes", sizes, "comma list of element counts, or 'default'")
      ->capture_default_str();
  app.add_option("--reps", reps, "timed repetitions per cell")->capture_default_str();
  app.add_option("--warmup", warmup, "untimed warmup repetitions")->capture_default_str();
  app.add_option("--seed", seed, "data initialization seed")->capture_default_str();
  app.add_option("--csv", csv, "output path, '-' for stdout")->capture_default_str();
  app.add_option("--packages", packages, "packages per unrolled iteration (0 = one per slot)")
      ->capture_default_str();
  app.add_option("--cache-sizes", cache_sizes,
                 "cache sizes in bytes (comma list), written to <csv>.meta for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "bench: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  ConfigHandle cfg;
  if (fv_bench_config_create(&cfg.p) != FV_OK) {
    std::cerr << "bench: " << fv_last_error() << '\n';
    return 1;
  }

  auto usage_error = [&](fv_status s) {
    if (s == FV_OK) return false;
    std::cerr << "bench: " << fv_last_error() << "\n\n" << app.help();
    return true;
  };
  if (usage_error(fv_bench_config_set_ops(cfg.p, ops.c_str()))) return 2;
  if (usage_error(fv_bench_config_set_type(cfg.p, type.c_str()))) return 2;
  if (usage_error(fv_bench_config_set_variants(cfg.p, variants.c_str()))) return 2;
  if (usage_error(fv_bench_config_set_sizes(cfg.p, sizes.c_str()))) return 2;
  if (usage_error(fv_bench_config_set_reps(cfg.p, reps))) return 2;
  if (usage_error(fv_bench_config_set_warmup(cfg.p, warmup))) return 2;
  if (usage_error(fv_bench_config_set_seed(cfg.p, seed))) return 2;
  if (usage_error(fv_bench_config_set_packages(cfg.p, packages))) return 2;

  ResultsHandle res;
  if (fv_status s = fv_bench_run(cfg.p, &res.p); s != FV_OK) {
    std::cerr << "bench: " << fv_status_string(s) << ": " << fv_last_error() << '\n';
    return s == FV_ERROR_INVALID_ARGUMENT || s == FV_ERROR_CONFIG ? 2 : 1;
  }

  if (fv_bench_results_write_csv(res.p, csv.c_str()) != FV_OK) {
    std::cerr << "bench: " << fv_last_error() << '\n';
    return 1;
  }

  if (!cache_sizes.empty()) {
    const std::string line = "# cache_bytes=" + cache_sizes;
    if (csv == "-") {
      std::cerr << line << '\n';
    } else {
      std::ofstream meta(csv + ".meta");
      meta << line << '\n';
      if (!meta) {
        std::cerr << "bench: cannot write " << csv << ".meta\n";
        return 1;
      }
    }
  }
  return 0;
}

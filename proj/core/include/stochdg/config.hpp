#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stochdg/evolve.hpp"
#include "stochdg/problems.hpp"

namespace stochdg {

enum class RunMode { run, convergence, table };

const char* to_string(RunMode mode);

// Everything the CLI can configure. `setup` holds the resolved per-problem
// values (domain, bc, gamma, t_final, dt, mu) after overrides are applied.
struct RunConfig {
  RunMode mode = RunMode::run;
  ProblemSetup setup;
  int elements = 64;  // run mode
  std::vector<int> resolutions{64, 128, 256, 512};
  int reference_elements = 0;  // 0 in flags means "dimension default" (4096 / 256)
  int degree = 0;
  int samples = 100;
  std::uint64_t base_seed = 0;
  std::uint64_t sample_index = 0;  // run mode: which Wiener path
  std::uint64_t perturbation_seed = 1;
  double kh_eps = 0.01;
  FluxConfig fluxes;
  ValidityFloors floors;
  MonitorBounds monitors;
  int snapshot_stride = 0;  // run mode: steps between snapshots, 0 = final only
  bool write_ledger = false;
  int threads = 1;
  std::string output_dir = ".";
  std::string table_input;  // table mode: per-sample CSV to recompute from
};

// Parse `mode --key value ...` plus an optional `--config file` of key=value
// lines (# comments). Flags override the file; the file overrides defaults;
// `env_output_dir` (if non-null) fills output-dir when nothing else sets it.
// Throws ConfigError naming the offending key.
RunConfig parse_config(const std::vector<std::string>& args,
                       const char* env_output_dir = nullptr);

// Sorted key=value lines describing the run semantics; feeding them back as a
// config file reproduces the same configuration. threads and output-dir are
// deliberately excluded so reruns hash and echo identically.
std::string effective_config(const RunConfig& config);

// FNV-1a hash of the effective-config text.
std::uint64_t config_hash(const RunConfig& config);

}  // namespace stochdg

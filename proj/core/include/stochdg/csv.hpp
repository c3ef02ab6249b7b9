#pragma once

#include <cstdint>
#include <string>

#include "stochdg/evolve.hpp"
#include "stochdg/study.hpp"

namespace stochdg {

inline constexpr const char* tool_version = "0.1.0";

// Comment block written at the top of every output file. The effective
// config is echoed line by line with a "cfg:" prefix; the timestamp is only
// stamped on convergence tables so everything else is rerun-byte-identical.
struct OutputHeader {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string effective_config;
  bool timestamp = false;
};

// 4-significant-digit convergence table (elements, E1, EOC(E1), E2, EOC(E2),
// stderr and sample counts, average row) plus a full-precision companion at
// <stem>_full<ext>. An empty report produces header-only files.
void emit_table(const ErrorReport& report, const OutputHeader& header, const std::string& path);

std::string table_companion_path(const std::string& path);

// One row per (resolution, sample): errors, stopped flags, increment hash.
// Full precision, no timestamp; byte-identical across reruns.
void emit_per_sample(const ErrorReport& report, const OutputHeader& header,
                     const std::string& path);

// Rebuild a report (rows only; statistics via finalize_report) from a file
// written by emit_per_sample.
ErrorReport read_per_sample(const std::string& path);

// Nodal snapshot: x[,y],rho,m1[,m2],energy,pressure in element-major node
// order; 2D appends a structured block of element-mean densities after a
// "# grid" marker (nx,ny line, then ny rows of nx values).
void emit_snapshot(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                   double time, const OutputHeader& header, const std::string& path);

// Per-step conserved totals and consumed Wiener increments.
void emit_ledger(const BalanceLedger& ledger, int dim, const OutputHeader& header,
                 const std::string& path);

// Shortest decimal form that parses back to the same double.
std::string format_full(double v);
// %.4g, the table display format.
std::string format_sig4(double v);

}  // namespace stochdg

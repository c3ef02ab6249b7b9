// Command-line front end: single runs with snapshots, Monte Carlo
// convergence studies, and table rebuilds from per-sample dumps.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "stochdg/config.hpp"
#include "stochdg/csv.hpp"
#include "stochdg/study.hpp"

namespace {

using namespace stochdg;

constexpr const char* usage_text = R"(usage: stochdg <mode> [--key value ...] [--config file]

modes
  run           evolve one sample path, write snapshots (and optionally the
                per-step balance ledger)
  convergence   Monte Carlo refinement study; writes table.csv, table_full.csv
                and per_sample.csv
  table         rebuild a table from a per-sample CSV (--input file)

common flags
  --problem     density_wave_1d | rarefaction | contact | shock | sod |
                density_wave_2d | kelvin_helmholtz
  --degree N    polynomial degree (0 = finite volume)
  --gamma X --mu X --t-final X --dt X --bc periodic|outflow
  --seed N      base seed for the Wiener increments
  --volume-flux ec|central   --surface-flux llf|ec
  --llf-dissipation state|flux   --ec-energy-form standard|printed
  --rho-min X --energy-max X     runtime validity monitors
  --output-dir PATH (or STOCHDG_OUTPUT_DIR)   --threads N

run flags         --elements N --sample N --snapshot-stride N --ledger true
convergence flags --resolutions 64,128,... --reference N --samples N
table flags       --input per_sample.csv

config file: key=value lines, # comments; flags override the file.
exit codes: 0 ok, 2 config error, 3 all samples stopped, 4 io error
)";

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void ensure_output_dir(const std::string& dir) {
  if (dir.empty() || dir == ".") return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

OutputHeader make_header(const RunConfig& cfg, bool timestamp) {
  OutputHeader h;
  h.config_hash = config_hash(cfg);
  h.seed = cfg.base_seed;
  h.effective_config = effective_config(cfg);
  h.timestamp = timestamp;
  return h;
}

int run_single(const RunConfig& cfg) {
  const GasModel gas = GasModel::ideal(cfg.setup.gamma);
  const OperatorSet ops = assemble_operator_set(cfg.degree);
  const Mesh mesh = cfg.setup.make_mesh(cfg.elements);
  const DiscreteField initial = initial_condition(cfg.setup, mesh, cfg.degree, ops, gas);

  StepContext ctx;
  ctx.ops = &ops;
  ctx.gas = gas;
  ctx.fluxes = cfg.fluxes;
  ctx.floors = cfg.floors;
  ctx.monitors = cfg.monitors;
  ctx.noise = NoiseSpec::make(cfg.setup.mu, cfg.setup.dim, cfg.base_seed);

  ensure_output_dir(cfg.output_dir);
  const OutputHeader header = make_header(cfg, /*timestamp=*/false);

  StepObserver observer;
  if (cfg.snapshot_stride > 0) {
    observer = [&](const DiscreteField& state, std::uint64_t step, double time) {
      if (step % static_cast<std::uint64_t>(cfg.snapshot_stride) != 0) return;
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%08llu.csv",
                    static_cast<unsigned long long>(step));
      emit_snapshot(state, ops, gas, time, header, join_path(cfg.output_dir, name));
    };
  }

  EvolveResult result = evolve_sample(initial, cfg.setup.t_final, cfg.setup.dt, cfg.sample_index,
                                      ctx, cfg.write_ledger, observer);

  double final_time = static_cast<double>(result.steps_taken) * cfg.setup.dt;
  emit_snapshot(result.field, ops, gas, final_time, header,
                join_path(cfg.output_dir, "snapshot_final.csv"));
  if (cfg.write_ledger)
    emit_ledger(result.ledger, cfg.setup.dim, header, join_path(cfg.output_dir, "ledger.csv"));

  if (result.stopped) {
    const StoppingRecord& rec = *result.stopped;
    std::cerr << "sample stopped at t=" << format_full(rec.time) << " (" << to_string(rec.reason)
              << ", element " << rec.element << ", node " << rec.node << ")\n";
    return 3;
  }
  std::cout << "completed " << result.steps_taken << " steps to t=" << format_full(final_time)
            << "\n";
  return 0;
}

void print_report(const ErrorReport& report) {
  std::printf("%10s %12s %8s %12s %8s %7s %7s\n", "elements", "E1", "EOC", "E2", "EOC", "used",
              "stopped");
  for (std::size_t i = 0; i < report.resolutions.size(); ++i) {
    const ResolutionResult& rr = report.resolutions[i];
    std::string eoc1 = "-", eoc2 = "-";
    if (i > 0) {
      eoc1 = format_sig4(report.eoc_rows[i - 1].eoc_e1);
      eoc2 = format_sig4(report.eoc_rows[i - 1].eoc_e2);
    }
    std::printf("%10d %12s %8s %12s %8s %7lld %7lld\n", rr.elements,
                format_sig4(rr.e1_mean).c_str(), eoc1.c_str(), format_sig4(rr.e2_mean).c_str(),
                eoc2.c_str(), static_cast<long long>(rr.samples_used),
                static_cast<long long>(rr.samples_stopped));
  }
  std::printf("%10s %12s %8s %12s %8s\n", "average", "-", format_sig4(report.avg_eoc_e1).c_str(),
              "-", format_sig4(report.avg_eoc_e2).c_str());
}

bool all_samples_stopped(const ErrorReport& report) {
  for (const ResolutionResult& rr : report.resolutions)
    if (rr.samples_used > 0) return false;
  return true;
}

int run_convergence(const RunConfig& cfg) {
  StudyConfig study;
  study.setup = cfg.setup;
  study.degree = cfg.degree;
  study.resolutions = cfg.resolutions;
  study.reference_elements = cfg.reference_elements;
  study.n_samples = cfg.samples;
  study.base_seed = cfg.base_seed;
  study.fluxes = cfg.fluxes;
  study.floors = cfg.floors;
  study.monitors = cfg.monitors;
  study.threads = cfg.threads;

  ErrorReport report = convergence_study(study);

  ensure_output_dir(cfg.output_dir);
  emit_per_sample(report, make_header(cfg, /*timestamp=*/false),
                  join_path(cfg.output_dir, "per_sample.csv"));
  emit_table(report, make_header(cfg, /*timestamp=*/true), join_path(cfg.output_dir, "table.csv"));

  print_report(report);
  if (all_samples_stopped(report)) {
    std::cerr << "all samples stopped before t-final\n";
    return 3;
  }
  return 0;
}

int run_table(const RunConfig& cfg) {
  ErrorReport report = read_per_sample(cfg.table_input);
  finalize_report(report);
  ensure_output_dir(cfg.output_dir);
  emit_table(report, make_header(cfg, /*timestamp=*/true), join_path(cfg.output_dir, "table.csv"));
  print_report(report);
  return all_samples_stopped(report) ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
    std::cout << usage_text;
    return 0;
  }
  try {
    RunConfig cfg = parse_config(args, std::getenv("STOCHDG_OUTPUT_DIR"));
    switch (cfg.mode) {
      case RunMode::run: return run_single(cfg);
      case RunMode::convergence: return run_convergence(cfg);
      case RunMode::table: return run_table(cfg);
    }
    return 2;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n" << usage_text;
    return 2;
  } catch (const IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return 4;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stochdg/evolve.hpp"
#include "stochdg/problems.hpp"

namespace stochdg {

// Volume-normalized L2 error of the density (e1) and the volume-normalized
// sum of squared L2 errors of the primitive fields rho, u, theta (e2),
// measured on the reference grid after interpolation: e1 divides the raw
// norm by sqrt(|domain|) and e2 divides by |domain|, so values are
// comparable across domains of different size. Both fields must live at the
// same time.
std::pair<double, double> error_pair(const DiscreteField& coarse, const OperatorSet& coarse_ops,
                                     const DiscreteField& reference, const OperatorSet& ref_ops,
                                     const GasModel& gas, const ValidityFloors& floors);

// eoc[i] = log2(e[i] / e[i+1]) for successive halvings of h; NaN where either
// error is not positive.
std::vector<double> eoc(const std::vector<double>& errors);

struct ErrorSample {
  std::uint64_t sample = 0;
  bool coarse_stopped = false;
  bool reference_stopped = false;
  double e1 = 0.0;
  double e2 = 0.0;
  std::uint64_t dw_hash = fnv1a_offset;  // increments consumed by the coarse run

  bool used() const { return !coarse_stopped && !reference_stopped; }
};

struct ResolutionResult {
  int elements = 0;
  std::int64_t samples_used = 0;
  std::int64_t samples_stopped = 0;
  double e1_mean = 0.0;
  double e1_stderr = 0.0;
  double e2_mean = 0.0;
  double e2_stderr = 0.0;
  std::vector<ErrorSample> samples;  // ascending sample index
};

struct EocRow {
  int coarse_elements = 0;
  int fine_elements = 0;
  double eoc_e1 = 0.0;
  double eoc_e2 = 0.0;
};

struct ErrorReport {
  int degree = 0;
  int reference_elements = 0;
  std::int64_t reference_stopped = 0;
  std::vector<ResolutionResult> resolutions;
  std::vector<EocRow> eoc_rows;
  double avg_eoc_e1 = 0.0;
  double avg_eoc_e2 = 0.0;
  std::vector<std::uint64_t> reference_hashes;  // per sample, for coupling checks
};

struct StudyConfig {
  ProblemSetup setup;
  int degree = 0;
  std::vector<int> resolutions;  // elements per axis, ascending
  int reference_elements = 0;    // multiple of every entry above
  int n_samples = 100;
  std::uint64_t base_seed = 0;
  FluxConfig fluxes;
  ValidityFloors floors;
  MonitorBounds monitors;
  int threads = 1;
};

// Monte Carlo convergence study: per sample, one reference run plus one run
// per resolution, all driven by the same Wiener increments; errors reduced
// in ascending sample order independent of thread scheduling. Stopped
// samples are excluded from the statistics and flagged in the rows.
ErrorReport convergence_study(const StudyConfig& config);

// Recompute means, standard errors, EOC rows and averages from the per-sample
// rows already present in the report (used both by convergence_study and to
// rebuild a table from a dumped per-sample CSV).
void finalize_report(ErrorReport& report);

}  // namespace stochdg

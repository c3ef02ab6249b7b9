#include "stochdg/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace stochdg {

namespace {

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

template <int Dim>
void primitive_differences(const DiscreteField& a, const DiscreteField& b, const GasModel& gas,
                           const ValidityFloors& floors, std::vector<double>& drho,
                           std::array<std::vector<double>, 2>& dvel, std::vector<double>& dtheta) {
  const std::size_t nn = a.n_nodes();
  drho.resize(nn);
  dtheta.resize(nn);
  for (int k = 0; k < Dim; ++k) dvel[k].resize(nn);
  const int nc = a.n_comp();
  const double* pa = a.data.data();
  const double* pb = b.data.data();
  for (std::size_t g = 0; g < nn; ++g, pa += nc, pb += nc) {
    Cons<Dim> ua, ub;
    ua.rho = pa[0];
    ub.rho = pb[0];
    for (int k = 0; k < Dim; ++k) {
      ua.mom[k] = pa[1 + k];
      ub.mom[k] = pb[1 + k];
    }
    ua.ener = pa[1 + Dim];
    ub.ener = pb[1 + Dim];
    Prim<Dim> qa = cons_to_prim(ua, gas, floors);
    Prim<Dim> qb = cons_to_prim(ub, gas, floors);
    drho[g] = qa.rho - qb.rho;
    for (int k = 0; k < Dim; ++k) dvel[k][g] = qa.vel[k] - qb.vel[k];
    dtheta[g] = qa.theta - qb.theta;
  }
}

}  // namespace

std::pair<double, double> error_pair(const DiscreteField& coarse, const OperatorSet& coarse_ops,
                                     const DiscreteField& reference, const OperatorSet& ref_ops,
                                     const GasModel& gas, const ValidityFloors& floors) {
  DiscreteField lifted =
      interpolate_to_reference(coarse, coarse_ops, reference.mesh, reference.degree, ref_ops);

  std::vector<double> drho, dtheta;
  std::array<std::vector<double>, 2> dvel;
  if (reference.mesh.dim == 1)
    primitive_differences<1>(lifted, reference, gas, floors, drho, dvel, dtheta);
  else
    primitive_differences<2>(lifted, reference, gas, floors, drho, dvel, dtheta);

  // Both functionals are reported per unit volume so that values are
  // comparable across domains of different size.
  const double measure = reference.mesh.measure();
  double e1 = discrete_l2_norm(reference.mesh, ref_ops, drho);
  double e2 = e1 * e1;
  for (int k = 0; k < reference.mesh.dim; ++k) {
    double nu = discrete_l2_norm(reference.mesh, ref_ops, dvel[k]);
    e2 += nu * nu;
  }
  double nt = discrete_l2_norm(reference.mesh, ref_ops, dtheta);
  e2 += nt * nt;
  return {e1 / std::sqrt(measure), e2 / measure};
}

std::vector<double> eoc(const std::vector<double>& errors) {
  std::vector<double> out;
  if (errors.size() < 2) return out;
  out.reserve(errors.size() - 1);
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    bool defined = errors[i] > 0.0 && errors[i + 1] > 0.0;
    out.push_back(defined ? std::log2(errors[i] / errors[i + 1])
                          : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

namespace {

void validate(const StudyConfig& c) {
  if (c.resolutions.empty()) throw ConfigError("convergence study: no resolutions given");
  if (c.n_samples < 1) throw ConfigError("convergence study: need at least one sample");
  if (c.degree < 0 || c.degree > max_operator_degree)
    throw ConfigError("convergence study: degree out of range");
  int prev = 0;
  for (int r : c.resolutions) {
    if (r <= prev) throw ConfigError("convergence study: resolutions must be ascending");
    prev = r;
  }
  if (c.reference_elements < c.resolutions.back())
    throw ConfigError("convergence study: reference must be at least the finest resolution");
  for (int r : c.resolutions)
    if (c.reference_elements % r != 0)
      throw ConfigError("convergence study: resolution " + std::to_string(r) +
                        " does not divide the reference resolution " +
                        std::to_string(c.reference_elements));
}

struct SampleOutcome {
  bool stopped = false;
  std::uint64_t dw_hash = fnv1a_offset;
};

void finalize_statistics(ResolutionResult& rr) {
  KahanSum m1, m2;
  std::int64_t used = 0;
  for (const ErrorSample& s : rr.samples) {
    if (!s.used()) continue;
    ++used;
    m1.add(s.e1);
    m2.add(s.e2);
  }
  rr.samples_used = used;
  rr.samples_stopped = static_cast<std::int64_t>(rr.samples.size()) - used;
  if (used == 0) return;
  rr.e1_mean = m1.sum / used;
  rr.e2_mean = m2.sum / used;
  if (used < 2) return;
  KahanSum v1, v2;
  for (const ErrorSample& s : rr.samples) {
    if (!s.used()) continue;
    double d1 = s.e1 - rr.e1_mean, d2 = s.e2 - rr.e2_mean;
    v1.add(d1 * d1);
    v2.add(d2 * d2);
  }
  rr.e1_stderr = std::sqrt(v1.sum / (used - 1)) / std::sqrt(static_cast<double>(used));
  rr.e2_stderr = std::sqrt(v2.sum / (used - 1)) / std::sqrt(static_cast<double>(used));
}

}  // namespace

ErrorReport convergence_study(const StudyConfig& config) {
  validate(config);

  const GasModel gas = GasModel::ideal(config.setup.gamma);
  const OperatorSet ops = assemble_operator_set(config.degree);
  const std::size_t n_res = config.resolutions.size();
  const std::size_t n_samples = static_cast<std::size_t>(config.n_samples);

  StepContext ctx;
  ctx.ops = &ops;
  ctx.gas = gas;
  ctx.fluxes = config.fluxes;
  ctx.floors = config.floors;
  ctx.monitors = config.monitors;
  ctx.noise = NoiseSpec::make(config.setup.mu, config.setup.dim, config.base_seed);

  // Initial data is sample-independent; build one copy per grid up front.
  const Mesh ref_mesh = config.setup.make_mesh(config.reference_elements);
  const DiscreteField ref_initial = initial_condition(config.setup, ref_mesh, config.degree, ops, gas);
  std::vector<DiscreteField> coarse_initial;
  coarse_initial.reserve(n_res);
  for (int r : config.resolutions) {
    Mesh m = config.setup.make_mesh(r);
    coarse_initial.push_back(initial_condition(config.setup, m, config.degree, ops, gas));
  }

  ErrorReport report;
  report.degree = config.degree;
  report.reference_elements = config.reference_elements;
  report.resolutions.resize(n_res);
  for (std::size_t i = 0; i < n_res; ++i) {
    report.resolutions[i].elements = config.resolutions[i];
    report.resolutions[i].samples.resize(n_samples);
  }
  std::vector<SampleOutcome> ref_outcome(n_samples);

  auto run_sample = [&](std::uint64_t s) {
    EvolveResult ref = evolve_sample(ref_initial, config.setup.t_final, config.setup.dt, s, ctx,
                                     /*record_ledger=*/false);
    ref_outcome[s] = {ref.stopped.has_value(), ref.ledger.dw_hash};
    for (std::size_t i = 0; i < n_res; ++i) {
      ErrorSample& row = report.resolutions[i].samples[s];
      row.sample = s;
      row.reference_stopped = ref.stopped.has_value();
      EvolveResult run = evolve_sample(coarse_initial[i], config.setup.t_final, config.setup.dt, s,
                                       ctx, /*record_ledger=*/false);
      row.coarse_stopped = run.stopped.has_value();
      row.dw_hash = run.ledger.dw_hash;
      if (!row.used()) continue;
      if (row.dw_hash != ref.ledger.dw_hash)
        throw std::logic_error("convergence study: Wiener paths diverged across resolutions");
      try {
        auto [e1, e2] = error_pair(run.field, ops, ref.field, ops, gas, config.floors);
        row.e1 = e1;
        row.e2 = e2;
      } catch (const StateError&) {
        // interpolation can overshoot into an invalid state near strong jumps
        row.coarse_stopped = true;
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(config.threads, static_cast<int>(n_samples)));
  if (n_workers == 1) {
    for (std::uint64_t s = 0; s < n_samples; ++s) run_sample(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        std::uint64_t s = next.fetch_add(1);
        if (s >= n_samples) return;
        try {
          run_sample(s);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  report.reference_hashes.resize(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    report.reference_hashes[s] = ref_outcome[s].dw_hash;
    if (ref_outcome[s].stopped) ++report.reference_stopped;
  }
  finalize_report(report);
  return report;
}

void finalize_report(ErrorReport& report) {
  for (ResolutionResult& rr : report.resolutions) finalize_statistics(rr);

  std::vector<double> e1_means, e2_means;
  for (const ResolutionResult& rr : report.resolutions) {
    e1_means.push_back(rr.e1_mean);
    e2_means.push_back(rr.e2_mean);
  }
  std::vector<double> eoc1 = eoc(e1_means), eoc2 = eoc(e2_means);
  report.eoc_rows.clear();
  KahanSum a1, a2;
  int d1 = 0, d2 = 0;
  for (std::size_t i = 0; i < eoc1.size(); ++i) {
    report.eoc_rows.push_back({report.resolutions[i].elements,
                               report.resolutions[i + 1].elements, eoc1[i], eoc2[i]});
    if (std::isfinite(eoc1[i])) {
      a1.add(eoc1[i]);
      ++d1;
    }
    if (std::isfinite(eoc2[i])) {
      a2.add(eoc2[i]);
      ++d2;
    }
  }
  report.avg_eoc_e1 = d1 ? a1.sum / d1 : std::numeric_limits<double>::quiet_NaN();
  report.avg_eoc_e2 = d2 ? a2.sum / d2 : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace stochdg

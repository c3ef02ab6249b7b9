#include "stochdg/evolve.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace stochdg {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::density_floor: return "density_floor";
    case StopReason::energy_cap: return "energy_cap";
    default: return "nonfinite";
  }
}

std::optional<StoppingRecord> check_assumption(const DiscreteField& field,
                                               const MonitorBounds& bounds, double time) {
  const int nc = field.n_comp();
  const int per = field.nodes_per_elem();
  const int dim = field.mesh.dim;
  const double* u = field.data.data();
  const std::size_t nn = field.n_nodes();
  for (std::size_t g = 0; g < nn; ++g, u += nc) {
    bool finite = true;
    for (int c = 0; c < nc; ++c) finite = finite && std::isfinite(u[c]);
    StopReason reason;
    if (!finite)
      reason = StopReason::nonfinite;
    else if (u[0] < bounds.rho_min)
      reason = StopReason::density_floor;
    else if (u[1 + dim] > bounds.energy_max)
      reason = StopReason::energy_cap;
    else
      continue;
    return StoppingRecord{time, reason, static_cast<int>(g / per), static_cast<int>(g % per)};
  }
  return std::nullopt;
}

std::optional<StoppingRecord> euler_maruyama_step(const DiscreteField& u, double t, double dt,
                                                  std::span<const double> dW,
                                                  const StepContext& ctx, DiscreteField& out,
                                                  RhsScratch& scratch) {
  try {
    dg_rhs(u, *ctx.ops, ctx.gas, ctx.fluxes, ctx.floors, out, scratch);
  } catch (const StateError& err) {
    StopReason reason = StopReason::nonfinite;
    if (err.element >= 0) {
      const double* bad = u.node(err.element, err.node);
      if (std::isfinite(bad[0]) && bad[0] <= ctx.floors.rho_floor)
        reason = StopReason::density_floor;
    }
    return StoppingRecord{t, reason, err.element, err.node};
  }

  const int nc = u.n_comp();
  const int dim = u.mesh.dim;
  const std::size_t nn = u.n_nodes();
  const double* src = u.data.data();
  double* dst = out.data.data();
  const double mu = ctx.noise.mu;

  if (mu == 0.0) {
    for (std::size_t g = 0; g < nn; ++g, src += nc, dst += nc)
      for (int c = 0; c < nc; ++c) dst[c] = src[c] + dt * dst[c];
  } else {
    const double ito = 0.5 * mu * mu * ctx.noise.n_wiener;
    if (dim == 1) {
      const double dw0 = dW[0];
      for (std::size_t g = 0; g < nn; ++g, src += 3, dst += 3) {
        double rho = src[0], m0 = src[1];
        dst[0] = rho + dt * dst[0];
        dst[1] = m0 + dt * dst[1] + mu * rho * dw0;
        dst[2] = src[2] + dt * (dst[2] + ito * rho) + mu * m0 * dw0;
      }
    } else {
      const double dw0 = dW[0], dw1 = dW[1];
      for (std::size_t g = 0; g < nn; ++g, src += 4, dst += 4) {
        double rho = src[0], m0 = src[1], m1 = src[2];
        dst[0] = rho + dt * dst[0];
        dst[1] = m0 + dt * dst[1] + mu * rho * dw0;
        dst[2] = m1 + dt * dst[2] + mu * rho * dw1;
        dst[3] = src[3] + dt * (dst[3] + ito * rho) + mu * (m0 * dw0 + m1 * dw1);
      }
    }
  }
  return check_assumption(out, ctx.monitors, t + dt);
}

std::uint64_t step_count(double t_final, double dt) {
  if (!(dt > 0.0) || !(t_final > 0.0))
    throw ConfigError("time horizon and step size must be positive");
  double ratio = t_final / dt;
  auto n = static_cast<std::uint64_t>(std::llround(ratio));
  if (n == 0 || std::abs(static_cast<double>(n) * dt - t_final) > 1e-9 * std::max(1.0, t_final))
    throw ConfigError("t_final must be an integer multiple of dt (t_final=" +
                      std::to_string(t_final) + ", dt=" + std::to_string(dt) + ")");
  return n;
}

EvolveResult evolve_sample(const DiscreteField& initial, double t_final, double dt,
                           std::uint64_t sample_index, const StepContext& ctx,
                           bool record_ledger, const StepObserver& observer) {
  const std::uint64_t n_steps = step_count(t_final, dt);
  EvolveResult res;
  res.field = initial;
  if (record_ledger) res.ledger.rows.reserve(n_steps + 1);

  WienerStream wiener(ctx.noise, sample_index);
  std::array<double, 2> dw{0.0, 0.0};
  const std::size_t nw = static_cast<std::size_t>(ctx.noise.n_wiener);
  DiscreteField next = DiscreteField::zeros(initial.mesh, initial.degree);
  RhsScratch scratch;

  for (std::uint64_t step = 0; step < n_steps; ++step) {
    double t = static_cast<double>(step) * dt;
    if (ctx.noise.mu != 0.0) {
      wiener.increments(step, dt, std::span<double>(dw.data(), nw));
      res.ledger.dw_hash = fnv1a64(dw.data(), nw * sizeof(double), res.ledger.dw_hash);
    }
    if (record_ledger) {
      BalanceRow row;
      row.step = step;
      row.time = t;
      row.dW = dw;
      conserved_totals(res.field, *ctx.ops, &row.mass, row.momentum.data(), &row.energy);
      res.ledger.rows.push_back(row);
    }
    auto stopped = euler_maruyama_step(res.field, t, dt, std::span<const double>(dw.data(), nw),
                                       ctx, next, scratch);
    if (stopped) {
      res.stopped = stopped;
      return res;  // res.field still holds the last state passing the monitors
    }
    std::swap(res.field.data, next.data);
    res.steps_taken = step + 1;
    if (observer) observer(res.field, res.steps_taken, static_cast<double>(step + 1) * dt);
  }
  if (record_ledger) {
    BalanceRow row;
    row.step = n_steps;
    row.time = static_cast<double>(n_steps) * dt;
    conserved_totals(res.field, *ctx.ops, &row.mass, row.momentum.data(), &row.energy);
    res.ledger.rows.push_back(row);
  }
  return res;
}

}  // namespace stochdg

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "stochdg/mesh.hpp"
#include "stochdg/noise.hpp"
#include "stochdg/semidisc.hpp"

namespace stochdg {

// Runtime mirror of the a-priori bounds the analysis assumes: density at
// least 1/K and total energy at most K for some K > 0.
struct MonitorBounds {
  double rho_min = 1e-8;
  double energy_max = 1e8;
};

enum class StopReason { density_floor, energy_cap, nonfinite };

const char* to_string(StopReason reason);

struct StoppingRecord {
  double time = 0.0;
  StopReason reason = StopReason::nonfinite;
  int element = -1;
  int node = -1;
};

// Scan in element-major order and report the first violating node, if any.
// Within a node: nonfinite takes precedence, then density, then energy.
std::optional<StoppingRecord> check_assumption(const DiscreteField& field,
                                               const MonitorBounds& bounds, double time);

// Pre-step conserved totals plus the Wiener increments consumed by the step
// starting at this row's time (zero for the final row).
struct BalanceRow {
  std::uint64_t step = 0;
  double time = 0.0;
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
  double energy = 0.0;
  std::array<double, 2> dW{0.0, 0.0};
};

struct BalanceLedger {
  std::vector<BalanceRow> rows;
  std::uint64_t dw_hash = fnv1a_offset;  // FNV-1a over the raw increment bytes, in step order
};

// Everything a time step needs besides the state itself.
struct StepContext {
  const OperatorSet* ops = nullptr;
  GasModel gas{1.4, 2.5};
  FluxConfig fluxes;
  ValidityFloors floors;
  MonitorBounds monitors;
  NoiseSpec noise;
};

// Ito drift correction h(U): the expected quadratic-variation energy input
// per unit time, (0, 0, mu^2 n_wiener rho / 2).
template <int Dim>
inline Cons<Dim> drift_forcing(const Cons<Dim>& u, const NoiseSpec& noise) {
  Cons<Dim> h;
  h.rho = 0.0;
  for (int k = 0; k < Dim; ++k) h.mom[k] = 0.0;
  h.ener = 0.5 * noise.mu * noise.mu * noise.n_wiener * u.rho;
  return h;
}

// Diffusion increment g(U) dW: momentum kick mu rho dW_k, energy mu m . dW,
// density untouched.
template <int Dim>
inline Cons<Dim> diffusion_increment(const Cons<Dim>& u, const NoiseSpec& noise,
                                     std::span<const double> dW) {
  Cons<Dim> g;
  g.rho = 0.0;
  g.ener = 0.0;
  for (int k = 0; k < Dim; ++k) {
    g.mom[k] = noise.mu * u.rho * dW[k];
    g.ener += noise.mu * u.mom[k] * dW[k];
  }
  return g;
}

// One Euler-Maruyama update
//   U' = U + dt (dg_rhs(U) + h(U)) + g(U) dW,
// with the Ito correction h(U) = (0, 0, mu^2 n_wiener rho / 2) and diffusion
// g(U) dW = (0, mu rho dW_k, mu m . dW). Monitors run on U'; a returned
// record means `out` must be discarded. Invalid states inside the RHS
// evaluation also stop (density_floor if the density is at the floor,
// nonfinite otherwise).
std::optional<StoppingRecord> euler_maruyama_step(const DiscreteField& u, double t, double dt,
                                                  std::span<const double> dW,
                                                  const StepContext& ctx, DiscreteField& out,
                                                  RhsScratch& scratch);

struct EvolveResult {
  DiscreteField field;  // final state, or the last state passing the monitors
  std::optional<StoppingRecord> stopped;
  BalanceLedger ledger;
  std::uint64_t steps_taken = 0;
};

// Called after every accepted step with the new state, the number of steps
// taken so far and the new time.
using StepObserver = std::function<void(const DiscreteField&, std::uint64_t, double)>;

// March n = t_final/dt Euler-Maruyama steps (the ratio must be integral to
// 1e-9 relative). The ledger gets one row per visited state; with mu = 0 the
// update degenerates to the explicit Euler method bit-for-bit.
EvolveResult evolve_sample(const DiscreteField& initial, double t_final, double dt,
                           std::uint64_t sample_index, const StepContext& ctx,
                           bool record_ledger = true, const StepObserver& observer = {});

// Number of steps implied by (t_final, dt); throws ConfigError when the ratio
// is not an integer.
std::uint64_t step_count(double t_final, double dt);

}  // namespace stochdg

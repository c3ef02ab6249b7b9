#pragma once

#include <cmath>
#include <stdexcept>

#include "stochdg/euler.hpp"

namespace stochdg {

enum class VolumeFluxKind { entropy_conservative, central };
enum class SurfaceFluxKind { llf, entropy_conservative };
enum class LlfDissipation { state, flux };
// The energy component of the entropy-conservative flux exists in two
// transcriptions; `standard` is the one passing the Tadmor condition and is
// the default, `printed` is kept compilable for auditing the discrepancy.
enum class EcEnergyForm { standard, printed };

struct FluxConfig {
  VolumeFluxKind volume = VolumeFluxKind::entropy_conservative;
  SurfaceFluxKind surface = SurfaceFluxKind::llf;
  LlfDissipation llf_dissipation = LlfDissipation::state;
  EcEnergyForm ec_energy_form = EcEnergyForm::standard;
};

// Logarithmic mean (a-b)/(log a - log b) with a series branch near a = b:
// with f = (a-b)/(a+b) and u = f^2, the mean equals
// (a+b) / (2 + 2u/3 + 2u^2/5 + 2u^3/7 + O(u^4)), used for u < 1e-4.
inline double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("log_mean requires positive arguments");
  double f = (a - b) / (a + b);
  double u = f * f;
  if (u < 1e-4) return (a + b) / (2.0 + u * (2.0 / 3.0 + u * (2.0 / 5.0 + u * (2.0 / 7.0))));
  return (a - b) / std::log(a / b);
}

// Entropy-conservative two-point flux in direction `axis` (Ranocha's flux:
// logarithmic density mean, logarithmic rho/p mean for the internal energy).
template <int Dim>
inline Cons<Dim> ec_flux(const Prim<Dim>& ql, const Prim<Dim>& qr, int axis,
                         const GasModel& gas, EcEnergyForm form = EcEnergyForm::standard) {
  double rho_ln = log_mean(ql.rho, qr.rho);
  double rp_ln = log_mean(ql.rho / ql.press, qr.rho / qr.press);
  double p_avg = 0.5 * (ql.press + qr.press);

  Cons<Dim> f;
  std::array<double, Dim> v_avg;
  for (int k = 0; k < Dim; ++k) v_avg[k] = 0.5 * (ql.vel[k] + qr.vel[k]);
  f.rho = rho_ln * v_avg[axis];
  for (int k = 0; k < Dim; ++k) f.mom[k] = f.rho * v_avg[k];
  f.mom[axis] += p_avg;

  if (form == EcEnergyForm::standard) {
    double vv = 0.0;
    for (int k = 0; k < Dim; ++k) vv += ql.vel[k] * qr.vel[k];
    f.ener = f.rho * (0.5 * vv + gas.c_v / rp_ln) +
             0.5 * (ql.press * qr.vel[axis] + qr.press * ql.vel[axis]);
  } else {
    // Verbatim transcription of the published energy component. Fails both
    // consistency and the Tadmor condition; retained for audit only.
    double sum_avg = 0.0, sq = 0.0;
    for (int k = 0; k < Dim; ++k) {
      sum_avg += v_avg[k];
      sq += v_avg[k] * v_avg[k];
    }
    double kin = sq - 0.5 * sum_avg * sum_avg;
    f.ener = (rho_ln * kin - gas.c_v * rho_ln / rp_ln + p_avg) * v_avg[axis] -
             0.25 * (qr.press - ql.press) * (qr.vel[axis] - ql.vel[axis]);
  }
  return f;
}

template <int Dim>
inline Cons<Dim> central_flux(const Cons<Dim>& ul, const Prim<Dim>& ql, const Cons<Dim>& ur,
                              const Prim<Dim>& qr, int axis) {
  Cons<Dim> fl = physical_flux(ul, ql, axis);
  Cons<Dim> fr = physical_flux(ur, qr, axis);
  Cons<Dim> f;
  f.rho = 0.5 * (fl.rho + fr.rho);
  for (int k = 0; k < Dim; ++k) f.mom[k] = 0.5 * (fl.mom[k] + fr.mom[k]);
  f.ener = 0.5 * (fl.ener + fr.ener);
  return f;
}

// Local Lax-Friedrichs (Rusanov) flux for normal sign*e_axis. The dissipation
// acts on the state jump by default; `flux` penalizes the jump of f instead.
template <int Dim>
inline Cons<Dim> llf_flux(const Cons<Dim>& ul, const Prim<Dim>& ql, const Cons<Dim>& ur,
                          const Prim<Dim>& qr, int axis, double sign, const GasModel& gas,
                          LlfDissipation diss = LlfDissipation::state) {
  Cons<Dim> fl = physical_flux(ul, ql, axis);
  Cons<Dim> fr = physical_flux(ur, qr, axis);
  double lam = max_wave_speed(ql, qr, axis, gas);
  Cons<Dim> f;
  if (diss == LlfDissipation::state) {
    f.rho = 0.5 * (fl.rho + fr.rho) * sign - 0.5 * lam * (ur.rho - ul.rho);
    for (int k = 0; k < Dim; ++k)
      f.mom[k] = 0.5 * (fl.mom[k] + fr.mom[k]) * sign - 0.5 * lam * (ur.mom[k] - ul.mom[k]);
    f.ener = 0.5 * (fl.ener + fr.ener) * sign - 0.5 * lam * (ur.ener - ul.ener);
  } else {
    f.rho = 0.5 * (fl.rho + fr.rho) * sign - 0.5 * lam * (fr.rho - fl.rho);
    for (int k = 0; k < Dim; ++k)
      f.mom[k] = 0.5 * (fl.mom[k] + fr.mom[k]) * sign - 0.5 * lam * (fr.mom[k] - fl.mom[k]);
    f.ener = 0.5 * (fl.ener + fr.ener) * sign - 0.5 * lam * (fr.ener - fl.ener);
  }
  return f;
}

template <int Dim>
inline Cons<Dim> llf_flux(const Cons<Dim>& ul, const Cons<Dim>& ur, int axis, double sign,
                          const GasModel& gas, LlfDissipation diss = LlfDissipation::state,
                          const ValidityFloors& floors = {}) {
  return llf_flux(ul, cons_to_prim(ul, gas, floors), ur, cons_to_prim(ur, gas, floors), axis,
                  sign, gas, diss);
}

template <int Dim>
inline Cons<Dim> ec_flux(const Cons<Dim>& ul, const Cons<Dim>& ur, int axis, const GasModel& gas,
                         EcEnergyForm form = EcEnergyForm::standard,
                         const ValidityFloors& floors = {}) {
  return ec_flux(cons_to_prim(ul, gas, floors), cons_to_prim(ur, gas, floors), axis, gas, form);
}

}  // namespace stochdg

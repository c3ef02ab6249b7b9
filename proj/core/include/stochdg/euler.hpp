#pragma once

#include <array>
#include <cmath>
#include <string>

#include "stochdg/errors.hpp"

namespace stochdg {

struct GasModel {
  double gamma;  // adiabatic exponent, > 1
  double c_v;    // specific heat at constant volume, 1/(gamma-1)

  static GasModel ideal(double gamma) {
    if (!(gamma > 1.0)) throw ConfigError("gas model requires gamma > 1");
    return {gamma, 1.0 / (gamma - 1.0)};
  }
};

// Positivity floors below which a conserved state is no longer convertible.
struct ValidityFloors {
  double rho_floor = 1e-12;
  double press_floor = 1e-12;
};

template <int Dim>
struct Cons {
  double rho;
  std::array<double, Dim> mom;
  double ener;  // total energy density
};

template <int Dim>
struct Prim {
  double rho;
  std::array<double, Dim> vel;
  double press;
  double theta;  // temperature p / rho
};

template <int Dim>
inline double pressure(const Cons<Dim>& u, const GasModel& gas) {
  double msq = 0.0;
  for (int k = 0; k < Dim; ++k) msq += u.mom[k] * u.mom[k];
  return (gas.gamma - 1.0) * (u.ener - 0.5 * msq / u.rho);
}

// Non-throwing conversion for hot loops; returns false when a floor is hit
// or the state is nonfinite.
template <int Dim>
inline bool try_cons_to_prim(const Cons<Dim>& u, const GasModel& gas,
                             const ValidityFloors& floors, Prim<Dim>& out) {
  if (!(u.rho > floors.rho_floor)) return false;
  double inv_rho = 1.0 / u.rho;
  double msq = 0.0;
  for (int k = 0; k < Dim; ++k) {
    out.vel[k] = u.mom[k] * inv_rho;
    msq += u.mom[k] * u.mom[k];
  }
  double p = (gas.gamma - 1.0) * (u.ener - 0.5 * msq * inv_rho);
  if (!(p > floors.press_floor)) return false;
  out.rho = u.rho;
  out.press = p;
  out.theta = p * inv_rho;
  return std::isfinite(p) && std::isfinite(u.rho);
}

template <int Dim>
inline Prim<Dim> cons_to_prim(const Cons<Dim>& u, const GasModel& gas,
                              const ValidityFloors& floors = {}) {
  Prim<Dim> q;
  if (!try_cons_to_prim(u, gas, floors, q))
    throw StateError("conserved state outside the valid gas region (rho=" +
                     std::to_string(u.rho) + ", p=" + std::to_string(pressure(u, gas)) + ")");
  return q;
}

template <int Dim>
inline Cons<Dim> prim_to_cons(const Prim<Dim>& q, const GasModel& gas) {
  Cons<Dim> u;
  u.rho = q.rho;
  double vsq = 0.0;
  for (int k = 0; k < Dim; ++k) {
    u.mom[k] = q.rho * q.vel[k];
    vsq += q.vel[k] * q.vel[k];
  }
  u.ener = q.press * gas.c_v + 0.5 * q.rho * vsq;
  return u;
}

template <int Dim>
inline Cons<Dim> prim_to_cons(double rho, const std::array<double, Dim>& vel, double press,
                              const GasModel& gas) {
  Prim<Dim> q;
  q.rho = rho;
  q.vel = vel;
  q.press = press;
  q.theta = press / rho;
  return prim_to_cons(q, gas);
}

// Physical flux f(U) . e_axis given matching conserved and primitive states.
template <int Dim>
inline Cons<Dim> physical_flux(const Cons<Dim>& u, const Prim<Dim>& q, int axis) {
  Cons<Dim> f;
  double un = q.vel[axis];
  f.rho = u.mom[axis];
  for (int k = 0; k < Dim; ++k) f.mom[k] = u.mom[k] * un;
  f.mom[axis] += q.press;
  f.ener = (u.ener + q.press) * un;
  return f;
}

template <int Dim>
inline Cons<Dim> physical_flux(const Cons<Dim>& u, const GasModel& gas, int axis,
                               const ValidityFloors& floors = {}) {
  return physical_flux(u, cons_to_prim(u, gas, floors), axis);
}

template <int Dim>
inline double sound_speed(const Prim<Dim>& q, const GasModel& gas) {
  return std::sqrt(gas.gamma * q.press / q.rho);
}

// Rusanov-type estimate: max over the two states of |u . n| + c, with n a
// unit axis vector.
template <int Dim>
inline double max_wave_speed(const Prim<Dim>& ql, const Prim<Dim>& qr, int axis,
                             const GasModel& gas) {
  double ll = std::abs(ql.vel[axis]) + sound_speed(ql, gas);
  double lr = std::abs(qr.vel[axis]) + sound_speed(qr, gas);
  return ll > lr ? ll : lr;
}

template <int Dim>
inline double max_wave_speed(const Cons<Dim>& ul, const Cons<Dim>& ur, int axis,
                             const GasModel& gas, const ValidityFloors& floors = {}) {
  return max_wave_speed(cons_to_prim(ul, gas, floors), cons_to_prim(ur, gas, floors), axis, gas);
}

inline double specific_entropy(double rho, double theta, const GasModel& gas) {
  return gas.c_v * std::log(theta) - std::log(rho);
}

// Total entropy density rho*s evaluated directly from conserved variables:
// c_v rho log((gamma-1)(E - |m|^2/(2 rho))) - (c_v+1) rho log rho.
template <int Dim>
inline double total_entropy(const Cons<Dim>& u, const GasModel& gas) {
  double p = pressure(u, gas);
  return gas.c_v * u.rho * std::log(p) - (gas.c_v + 1.0) * u.rho * std::log(u.rho);
}

struct EntropyQuantities {
  double specific_s;   // c_v log(theta) - log(rho)
  double total_S;      // rho * specific_s
  double ballistic_H;  // rho e - Theta rho s, the free energy at temperature Theta
};

template <int Dim>
inline EntropyQuantities entropy_quantities(const Cons<Dim>& u, const GasModel& gas,
                                            double Theta, const ValidityFloors& floors = {}) {
  Prim<Dim> q = cons_to_prim(u, gas, floors);
  EntropyQuantities e;
  e.specific_s = specific_entropy(q.rho, q.theta, gas);
  e.total_S = q.rho * e.specific_s;
  e.ballistic_H = q.rho * gas.c_v * q.theta - Theta * e.total_S;
  return e;
}

}  // namespace stochdg

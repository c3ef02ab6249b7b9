#pragma once

#include <array>
#include <functional>
#include <span>

#include "stochdg/euler.hpp"
#include "stochdg/fluxes.hpp"
#include "stochdg/mesh.hpp"
#include "stochdg/operators.hpp"

namespace stochdg {

// Collocation-quadrature L2 norm of a scalar nodal array laid out like one
// component of a DiscreteField.
double discrete_l2_norm(const Mesh& mesh, const OperatorSet& ops, std::span<const double> nodal);
double discrete_l2_norm(const DiscreteField& field, const OperatorSet& ops, int comp);

struct Totals {
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
  double energy = 0.0;
  double entropy = 0.0;  // quadrature total of rho*s; NaN if any state is invalid
};

// Quadrature totals of the conserved components (compensated summation) plus
// the total entropy.
Totals total_quantities(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas);

// Totals of the conserved components only; cheap enough for per-step ledgers.
void conserved_totals(const DiscreteField& field, const OperatorSet& ops, double* mass,
                      double* momentum, double* energy);

// Evaluate a coarse field's element polynomials at the nodes of a finer mesh
// over the same domain; the fine element count must be an integer multiple of
// the coarse one per axis.
DiscreteField interpolate_to_reference(const DiscreteField& coarse, const OperatorSet& coarse_ops,
                                       const Mesh& fine_mesh, int fine_degree,
                                       const OperatorSet& fine_ops);

// Scratch buffers for repeated RHS evaluations (primitive cache and one
// numerical-flux slot per element face side).
struct RhsScratch {
  std::vector<double> prim;
  std::vector<double> iface;
};

// Flux-differencing DGSEM drift: volume contribution -2 sum_l D_il f_vol plus
// the face correction M^-1 B (f(U).n - f*), scaled by 2/h per direction.
// Periodic boundaries wrap; outflow uses the interior trace as the exterior
// state. Throws StateError (with element/node) on invalid input states.
void dg_rhs(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
            const FluxConfig& fluxes, const ValidityFloors& floors, DiscreteField& drift,
            RhsScratch& scratch);

DiscreteField dg_rhs(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                     const FluxConfig& fluxes = {}, const ValidityFloors& floors = {});

// Reference triple (r, Theta, v) for the relative entropy, sampled at node
// positions (second coordinate unused in 1D).
struct ReferenceTriple {
  std::function<double(std::array<double, 2>)> density;
  std::function<double(std::array<double, 2>)> temperature;
  std::function<std::array<double, 2>(std::array<double, 2>)> velocity;
};

// Relative entropy of a numerical field against a smooth reference triple:
// quadrature of  1/2 rho|u-v|^2 - Theta rho s(rho,theta) - rho dH/drho(r,Theta)
// + (r dH/drho(r,Theta) - H(r,Theta)),  H the ballistic free energy. The
// integrand is evaluated literally; no cancellation at matched states is
// assumed or asserted.
double relative_entropy(const DiscreteField& field, const OperatorSet& ops, const GasModel& gas,
                        const ReferenceTriple& ref, const ValidityFloors& floors = {});

}  // namespace stochdg

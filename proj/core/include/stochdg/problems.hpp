#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "stochdg/evolve.hpp"
#include "stochdg/mesh.hpp"

namespace stochdg {

enum class Problem {
  density_wave_1d,
  rarefaction,
  contact,
  shock,
  sod,
  density_wave_2d,
  kelvin_helmholtz,
};

const char* to_string(Problem p);
Problem problem_from_string(const std::string& name);

// Randomized interface perturbation for the shear-layer problem: two
// interfaces I_j = J_j + eps * Y_j(x) with Y_j a normalized cosine series
// sum_{m=1..10} a_j^m cos(b_j^m + 2 pi m x), sum_m a_j^m = 1.
struct ShearPerturbation {
  static constexpr int n_modes = 10;
  double eps = 0.01;
  std::array<double, n_modes> a1{}, b1{}, a2{}, b2{};

  static ShearPerturbation draw(std::uint64_t seed, double eps);
  static ShearPerturbation none();  // eps = 0
};

// Interface heights (I1, I2) at horizontal position x; |I_j - J_j| <= eps
// around J1 = 0.25, J2 = 0.75.
std::pair<double, double> kh_interface(double x, const ShearPerturbation& pert);

// Complete problem definition with the published defaults (domain, boundary
// conditions, horizon, step size, noise amplitude).
struct ProblemSetup {
  Problem problem = Problem::density_wave_1d;
  int dim = 1;
  double domain_lo = -1.0;
  double domain_hi = 1.0;
  BoundaryKind bc = BoundaryKind::periodic;
  double gamma = 1.4;
  double t_final = 0.5;
  double dt = 1e-5;
  double mu = 1.0;
  ShearPerturbation perturbation = ShearPerturbation::none();

  Mesh make_mesh(int elements_per_axis) const {
    return dim == 1 ? Mesh::line(domain_lo, domain_hi, elements_per_axis, bc)
                    : Mesh::square(domain_lo, domain_hi, elements_per_axis, bc);
  }
};

ProblemSetup default_setup(Problem p);

// Nodal interpolant of the exact primitive datum, converted to conserved
// variables. A node exactly on a 1D jump takes the right state; the 2D shear
// band includes both of its interfaces.
DiscreteField initial_condition(const ProblemSetup& setup, const Mesh& mesh, int degree,
                                const OperatorSet& ops, const GasModel& gas);

}  // namespace stochdg

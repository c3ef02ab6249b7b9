#include "stochdg/problems.hpp"

#include <cmath>
#include <numbers>

#include "stochdg/euler.hpp"
#include "stochdg/noise.hpp"

namespace stochdg {

namespace {
constexpr double pi = std::numbers::pi;
constexpr std::uint32_t perturbation_domain = 0x70657274u;  // keeps draws out of the Wiener keyspace
}  // namespace

const char* to_string(Problem p) {
  switch (p) {
    case Problem::density_wave_1d: return "density_wave_1d";
    case Problem::rarefaction: return "rarefaction";
    case Problem::contact: return "contact";
    case Problem::shock: return "shock";
    case Problem::sod: return "sod";
    case Problem::density_wave_2d: return "density_wave_2d";
    case Problem::kelvin_helmholtz: return "kelvin_helmholtz";
  }
  return "?";
}

Problem problem_from_string(const std::string& name) {
  for (Problem p : {Problem::density_wave_1d, Problem::rarefaction, Problem::contact,
                    Problem::shock, Problem::sod, Problem::density_wave_2d,
                    Problem::kelvin_helmholtz}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown problem name: " + name);
}

ShearPerturbation ShearPerturbation::draw(std::uint64_t seed, double eps) {
  ShearPerturbation pert;
  pert.eps = eps;
  std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32)};
  for (int j = 1; j <= 2; ++j) {
    auto& a = (j == 1) ? pert.a1 : pert.a2;
    auto& b = (j == 1) ? pert.b1 : pert.b2;
    double sum = 0.0;
    for (int m = 0; m < n_modes; ++m) {
      auto r = philox4x32({static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(j),
                           perturbation_domain, 0u},
                          key);
      // two uniforms in (0, 1] from the four 32-bit words
      double u1 = ((static_cast<std::uint64_t>(r[0]) << 32 | r[1]) >> 11) * 0x1.0p-53 + 0x1.0p-53;
      double u2 = ((static_cast<std::uint64_t>(r[2]) << 32 | r[3]) >> 11) * 0x1.0p-53 + 0x1.0p-53;
      a[m] = u1;
      sum += u1;
      b[m] = (2.0 * u2 - 1.0) * pi;
    }
    for (int m = 0; m < n_modes; ++m) a[m] /= sum;
  }
  return pert;
}

ShearPerturbation ShearPerturbation::none() {
  ShearPerturbation pert;
  pert.eps = 0.0;
  pert.a1.fill(1.0 / n_modes);
  pert.a2.fill(1.0 / n_modes);
  pert.b1.fill(0.0);
  pert.b2.fill(0.0);
  return pert;
}

std::pair<double, double> kh_interface(double x, const ShearPerturbation& pert) {
  auto series = [&](const std::array<double, ShearPerturbation::n_modes>& a,
                    const std::array<double, ShearPerturbation::n_modes>& b) {
    double sum = 0.0;
    double y = 0.0;
    for (int m = 0; m < ShearPerturbation::n_modes; ++m) {
      sum += a[m];
      y += a[m] * std::cos(b[m] + 2.0 * pi * (m + 1) * x);
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw ConfigError("kh_interface: mode amplitudes must sum to 1");
    return y;
  };
  double i1 = 0.25 + pert.eps * series(pert.a1, pert.b1);
  double i2 = 0.75 + pert.eps * series(pert.a2, pert.b2);
  return {i1, i2};
}

ProblemSetup default_setup(Problem p) {
  ProblemSetup s;
  s.problem = p;
  switch (p) {
    case Problem::density_wave_1d:
      break;  // struct defaults
    case Problem::rarefaction:
    case Problem::contact:
    case Problem::shock:
      s.dim = 1;
      s.domain_lo = 0.0;
      s.domain_hi = 1.0;
      s.bc = BoundaryKind::outflow;
      s.t_final = 0.2;
      break;
    case Problem::sod:
      s.dim = 1;
      s.domain_lo = 0.0;
      s.domain_hi = 1.0;
      s.bc = BoundaryKind::outflow;
      s.t_final = 0.15;
      break;
    case Problem::density_wave_2d:
      s.dim = 2;
      s.t_final = 0.1;
      s.dt = 1e-4;
      s.mu = 0.1;
      break;
    case Problem::kelvin_helmholtz:
      s.dim = 2;
      s.domain_lo = 0.0;
      s.domain_hi = 1.0;
      s.t_final = 1.5;
      s.dt = 1e-4;
      s.mu = 0.1;
      s.perturbation = ShearPerturbation::draw(/*seed=*/1u, /*eps=*/0.01);
      break;
  }
  return s;
}

namespace {

Prim<1> riemann_datum(Problem p, double x) {
  struct LR {
    Prim<1> left, right;
  };
  LR lr;
  switch (p) {
    case Problem::rarefaction:
      lr = {{0.5197, {-0.7259}, 0.4, 0.0}, {1.0, {0.0}, 1.0, 0.0}};
      break;
    case Problem::contact:
      lr = {{0.5, {0.5}, 5.0, 0.0}, {1.0, {5.0}, 5.0, 0.0}};
      break;
    case Problem::shock:
      lr = {{1.0, {0.7276}, 1.0, 0.0}, {0.5313, {0.0}, 0.4, 0.0}};
      break;
    case Problem::sod:
      lr = {{1.0, {0.0}, 1.0, 0.0}, {0.125, {0.0}, 0.1, 0.0}};
      break;
    default:
      throw ConfigError("riemann_datum: not a Riemann problem");
  }
  return x < 0.5 ? lr.left : lr.right;
}

}  // namespace

DiscreteField initial_condition(const ProblemSetup& setup, const Mesh& mesh, int degree,
                                const OperatorSet& ops, const GasModel& gas) {
  if (mesh.dim != setup.dim) throw ConfigError("initial_condition: mesh dimension mismatch");
  DiscreteField f = DiscreteField::zeros(mesh, degree);
  int npe = f.nodes_per_elem();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int q = 0; q < npe; ++q) {
      auto pos = node_position(mesh, ops, e, q);
      double* dst = f.node(e, q);
      if (mesh.dim == 1) {
        Prim<1> prim;
        switch (setup.problem) {
          case Problem::density_wave_1d:
            prim = {1.0 + 0.5 * std::sin(2.0 * pi * pos[0]), {0.1}, 10.0, 0.0};
            break;
          default:
            prim = riemann_datum(setup.problem, pos[0]);
        }
        Cons<1> u = prim_to_cons(prim, gas);
        dst[0] = u.rho;
        dst[1] = u.mom[0];
        dst[2] = u.ener;
      } else {
        Prim<2> prim;
        if (setup.problem == Problem::density_wave_2d) {
          prim = {1.0 + 0.5 * std::sin(2.0 * pi * (pos[0] + pos[1])), {0.1, 0.1}, 10.0, 0.0};
        } else if (setup.problem == Problem::kelvin_helmholtz) {
          auto [i1, i2] = kh_interface(pos[0], setup.perturbation);
          bool inner = (i1 <= pos[1]) && (pos[1] <= i2);
          prim = inner ? Prim<2>{2.0, {-0.5, 0.0}, 2.5, 0.0} : Prim<2>{1.0, {0.5, 0.0}, 2.5, 0.0};
        } else {
          throw ConfigError("initial_condition: unknown 2-d problem");
        }
        Cons<2> u = prim_to_cons(prim, gas);
        dst[0] = u.rho;
        dst[1] = u.mom[0];
        dst[2] = u.mom[1];
        dst[3] = u.ener;
      }
    }
  }
  return f;
}

}  // namespace stochdg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "stochdg/problems.hpp"

using namespace stochdg;

namespace {
const GasModel gas = GasModel::ideal(1.4);
constexpr double pi = std::numbers::pi;
}  // namespace

TEST_CASE("problem names round trip and unknown names are rejected") {
  for (Problem p : {Problem::density_wave_1d, Problem::rarefaction, Problem::contact,
                    Problem::shock, Problem::sod, Problem::density_wave_2d,
                    Problem::kelvin_helmholtz}) {
    CHECK(problem_from_string(to_string(p)) == p);
  }
  CHECK(std::string(to_string(Problem::sod)) == "sod");
  CHECK(std::string(to_string(Problem::kelvin_helmholtz)) == "kelvin_helmholtz");
  CHECK_THROWS_AS(problem_from_string("vortex"), ConfigError);
  CHECK_THROWS_AS(problem_from_string(""), ConfigError);
}

TEST_CASE("default setups carry the published run parameters") {
  ProblemSetup wave = default_setup(Problem::density_wave_1d);
  CHECK(wave.dim == 1);
  CHECK(wave.domain_lo == -1.0);
  CHECK(wave.domain_hi == 1.0);
  CHECK(wave.bc == BoundaryKind::periodic);
  CHECK(wave.gamma == 1.4);
  CHECK(wave.t_final == 0.5);
  CHECK(wave.dt == 1e-5);
  CHECK(wave.mu == 1.0);

  for (Problem p : {Problem::rarefaction, Problem::contact, Problem::shock}) {
    ProblemSetup s = default_setup(p);
    CHECK(s.dim == 1);
    CHECK(s.domain_lo == 0.0);
    CHECK(s.domain_hi == 1.0);
    CHECK(s.bc == BoundaryKind::outflow);
    CHECK(s.t_final == 0.2);
    CHECK(s.dt == 1e-5);
    CHECK(s.mu == 1.0);
  }

  ProblemSetup sod = default_setup(Problem::sod);
  CHECK(sod.bc == BoundaryKind::outflow);
  CHECK(sod.t_final == 0.15);

  ProblemSetup wave2 = default_setup(Problem::density_wave_2d);
  CHECK(wave2.dim == 2);
  CHECK(wave2.domain_lo == -1.0);
  CHECK(wave2.domain_hi == 1.0);
  CHECK(wave2.t_final == 0.1);
  CHECK(wave2.dt == 1e-4);
  CHECK(wave2.mu == 0.1);

  ProblemSetup kh = default_setup(Problem::kelvin_helmholtz);
  CHECK(kh.dim == 2);
  CHECK(kh.domain_lo == 0.0);
  CHECK(kh.domain_hi == 1.0);
  CHECK(kh.bc == BoundaryKind::periodic);
  CHECK(kh.t_final == 1.5);
  CHECK(kh.dt == 1e-4);
  CHECK(kh.mu == 0.1);
  CHECK(kh.perturbation.eps == 0.01);
  // The default perturbation is an actual draw, not the flat fallback.
  double spread = 0.0;
  for (double a : kh.perturbation.a1) spread = std::max(spread, std::abs(a - 0.1));
  CHECK(spread > 1e-4);
}

TEST_CASE("smooth wave data interpolate the analytic profile") {
  ProblemSetup setup = default_setup(Problem::density_wave_1d);
  OperatorSet ops = assemble_operator_set(0);
  Mesh mesh = setup.make_mesh(4);  // midpoints at -0.75, -0.25, 0.25, 0.75
  DiscreteField f = initial_condition(setup, mesh, 0, ops, gas);
  const double* u = f.node(2, 0);  // x = 0.25, the crest
  CHECK(u[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(u[1] == doctest::Approx(0.15).epsilon(1e-14));
  // E = p/(gamma-1) + rho v^2 / 2 with p = 10
  CHECK(u[2] == doctest::Approx(25.0 + 0.5 * 1.5 * 0.01).epsilon(1e-14));

  ProblemSetup setup2 = default_setup(Problem::density_wave_2d);
  Mesh mesh2 = setup2.make_mesh(4);
  DiscreteField f2 = initial_condition(setup2, mesh2, 0, ops, gas);
  for (int e = 0; e < mesh2.n_elements(); ++e) {
    auto pos = node_position(mesh2, ops, e, 0);
    double rho = 1.0 + 0.5 * std::sin(2.0 * pi * (pos[0] + pos[1]));
    const double* v = f2.node(e, 0);
    CHECK(v[0] == doctest::Approx(rho).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(0.1 * rho).epsilon(1e-14));
    CHECK(v[2] == doctest::Approx(0.1 * rho).epsilon(1e-14));
    CHECK(v[3] == doctest::Approx(25.0 + 0.5 * rho * 0.02).epsilon(1e-13));
  }
}

TEST_CASE("Riemann data jump at the midpoint and a node on the jump takes the right state") {
  OperatorSet ops0 = assemble_operator_set(0);
  ProblemSetup sod = default_setup(Problem::sod);
  Mesh mesh = sod.make_mesh(2);  // midpoints 0.25 and 0.75
  DiscreteField f = initial_condition(sod, mesh, 0, ops0, gas);
  const double* l = f.node(0, 0);
  CHECK(l[0] == 1.0);
  CHECK(l[1] == 0.0);
  CHECK(l[2] == doctest::Approx(2.5).epsilon(1e-15));
  const double* r = f.node(1, 0);
  CHECK(r[0] == 0.125);
  CHECK(r[1] == 0.0);
  CHECK(r[2] == doctest::Approx(0.25).epsilon(1e-15));

  ProblemSetup contact = default_setup(Problem::contact);
  DiscreteField fc = initial_condition(contact, contact.make_mesh(2), 0, ops0, gas);
  const double* cr = fc.node(1, 0);  // x = 0.75: rho = 1, v = 5, p = 5
  CHECK(cr[0] == 1.0);
  CHECK(cr[1] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(cr[2] == doctest::Approx(5.0 / 0.4 + 12.5).epsilon(1e-15));

  // Degree 1 on two elements puts nodes exactly on x = 0.5.
  OperatorSet ops1 = assemble_operator_set(1);
  DiscreteField fj = initial_condition(sod, sod.make_mesh(2), 1, ops1, gas);
  const double* mid_left = fj.node(0, 1);   // x = 0.5 from the left element
  const double* mid_right = fj.node(1, 0);  // x = 0.5 from the right element
  CHECK(mid_left[0] == 0.125);
  CHECK(mid_right[0] == 0.125);

  ProblemSetup rare = default_setup(Problem::rarefaction);
  DiscreteField fr = initial_condition(rare, rare.make_mesh(2), 0, ops0, gas);
  CHECK(fr.node(0, 0)[0] == 0.5197);
  CHECK(fr.node(0, 0)[1] == doctest::Approx(0.5197 * -0.7259).epsilon(1e-15));
  ProblemSetup shock = default_setup(Problem::shock);
  DiscreteField fs = initial_condition(shock, shock.make_mesh(2), 0, ops0, gas);
  CHECK(fs.node(1, 0)[0] == 0.5313);
  CHECK(fs.node(1, 0)[1] == 0.0);
}

TEST_CASE("shear band sits between the two interfaces") {
  ProblemSetup kh = default_setup(Problem::kelvin_helmholtz);
  kh.perturbation = ShearPerturbation::none();
  OperatorSet ops = assemble_operator_set(0);
  Mesh mesh = kh.make_mesh(8);  // midpoints at (2k+1)/16
  DiscreteField f = initial_condition(kh, mesh, 0, ops, gas);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    auto pos = node_position(mesh, ops, e, 0);
    bool inner = (0.25 <= pos[1]) && (pos[1] <= 0.75);
    const double* u = f.node(e, 0);
    if (inner) {
      CHECK(u[0] == 2.0);
      CHECK(u[1] == doctest::Approx(-1.0).epsilon(1e-15));
      CHECK(u[2] == 0.0);
      CHECK(u[3] == doctest::Approx(6.5).epsilon(1e-15));
    } else {
      CHECK(u[0] == 1.0);
      CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(u[2] == 0.0);
      CHECK(u[3] == doctest::Approx(6.375).epsilon(1e-15));
    }
  }
}

TEST_CASE("interface perturbations are normalized, bounded and periodic") {
  ShearPerturbation none = ShearPerturbation::none();
  auto [i1, i2] = kh_interface(0.123, none);
  CHECK(i1 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(i2 == doctest::Approx(0.75).epsilon(1e-15));

  // A flat spectrum with zero phases peaks at x = 0 where every cosine is 1.
  ShearPerturbation flat = ShearPerturbation::none();
  flat.eps = 0.01;
  auto [p1, p2] = kh_interface(0.0, flat);
  CHECK(p1 == doctest::Approx(0.26).epsilon(1e-14));
  CHECK(p2 == doctest::Approx(0.76).epsilon(1e-14));

  ShearPerturbation drawn = ShearPerturbation::draw(7, 0.01);
  CHECK(drawn.eps == 0.01);
  for (int j = 0; j < 2; ++j) {
    const auto& a = (j == 0) ? drawn.a1 : drawn.a2;
    const auto& b = (j == 0) ? drawn.b1 : drawn.b2;
    double sum = 0.0;
    for (int m = 0; m < ShearPerturbation::n_modes; ++m) {
      CHECK(a[m] >= 0.0);
      CHECK(a[m] <= 1.0);
      CHECK(std::abs(b[m]) <= pi + 1e-12);
      sum += a[m];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Bounded displacement and unit periodicity.
  for (double x : {0.0, 0.2, 0.37, 0.55, 0.81, 0.999}) {
    auto [a1, a2] = kh_interface(x, drawn);
    CHECK(std::abs(a1 - 0.25) <= drawn.eps + 1e-15);
    CHECK(std::abs(a2 - 0.75) <= drawn.eps + 1e-15);
    auto [w1, w2] = kh_interface(x + 1.0, drawn);
    CHECK(w1 == doctest::Approx(a1).epsilon(1e-10));
    CHECK(w2 == doctest::Approx(a2).epsilon(1e-10));
  }

  // Draws are reproducible and seed-sensitive.
  ShearPerturbation again = ShearPerturbation::draw(7, 0.01);
  CHECK(again.a1 == drawn.a1);
  CHECK(again.b2 == drawn.b2);
  ShearPerturbation other = ShearPerturbation::draw(8, 0.01);
  CHECK(other.a1 != drawn.a1);

  ShearPerturbation bad = ShearPerturbation::none();
  bad.a1[0] = 0.5;  // sum now 1.4
  CHECK_THROWS_AS(kh_interface(0.0, bad), ConfigError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochdg/study.hpp"

using namespace stochdg;

namespace {

const GasModel gas = GasModel::ideal(1.4);

DiscreteField constant_field(const Mesh& mesh, int degree, double rho, double v0, double press) {
  DiscreteField f = DiscreteField::zeros(mesh, degree);
  Cons<1> c = prim_to_cons<1>(rho, {v0}, press, gas);
  for (std::size_t g = 0; g < f.n_nodes(); ++g) {
    double* u = f.data.data() + g * f.n_comp();
    u[0] = c.rho;
    u[1] = c.mom[0];
    u[2] = c.ener;
  }
  return f;
}

StudyConfig wave_study(int degree, std::vector<int> resolutions, int reference, int samples) {
  StudyConfig cfg;
  cfg.setup = default_setup(Problem::density_wave_1d);
  cfg.setup.t_final = 0.01;
  cfg.setup.dt = 1e-3;
  cfg.degree = degree;
  cfg.resolutions = std::move(resolutions);
  cfg.reference_elements = reference;
  cfg.n_samples = samples;
  cfg.base_seed = 42;
  return cfg;
}

}  // namespace

TEST_CASE("identical fields have zero error") {
  OperatorSet ops = assemble_operator_set(1);
  Mesh mesh = Mesh::line(0.0, 2.0, 8, BoundaryKind::periodic);
  DiscreteField f = constant_field(mesh, 1, 1.3, 0.2, 0.9);
  auto [e1, e2] = error_pair(f, ops, f, ops, gas, ValidityFloors{});
  CHECK(e1 == 0.0);
  CHECK(e2 == 0.0);
}

TEST_CASE("a uniform offset reproduces the normalized error exactly") {
  // Coarse state (1 + d, 0, 1 + d) against reference (1, 0, 1): the density
  // and temperature errors are d and 0 (theta = p / rho matches), velocity 0,
  // so e1 = d and e2 = d^2 after volume normalization.
  OperatorSet ops = assemble_operator_set(0);
  Mesh coarse_mesh = Mesh::line(0.0, 2.0, 4, BoundaryKind::periodic);
  Mesh ref_mesh = Mesh::line(0.0, 2.0, 8, BoundaryKind::periodic);
  const double d = 1e-3;
  DiscreteField coarse = constant_field(coarse_mesh, 0, 1.0 + d, 0.0, 1.0 + d);
  DiscreteField ref = constant_field(ref_mesh, 0, 1.0, 0.0, 1.0);
  auto [e1, e2] = error_pair(coarse, ops, ref, ops, gas, ValidityFloors{});
  CHECK(e1 == doctest::Approx(d).epsilon(1e-12));
  CHECK(e2 == doctest::Approx(d * d).epsilon(1e-12));
}

TEST_CASE("eoc is the base-2 slope between successive halvings") {
  std::vector<double> r1 = eoc({0.4, 0.1});
  REQUIRE(r1.size() == 1);
  CHECK(r1[0] == doctest::Approx(2.0).epsilon(1e-14));

  std::vector<double> flat = eoc({0.3, 0.3});
  CHECK(flat[0] == 0.0);

  std::vector<double> undef = eoc({0.1, 0.0});
  REQUIRE(undef.size() == 1);
  CHECK(std::isnan(undef[0]));

  CHECK(eoc({0.5}).empty());
  CHECK(eoc({}).empty());

  std::vector<double> chain = eoc({1.0, 0.25, 0.125});
  REQUIRE(chain.size() == 2);
  CHECK(chain[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(chain[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("a small noisy study is coupled, reproducible and thread-invariant") {
  StudyConfig cfg = wave_study(0, {8, 16}, 32, 4);
  ErrorReport report = convergence_study(cfg);

  REQUIRE(report.resolutions.size() == 2);
  REQUIRE(report.reference_hashes.size() == 4);
  CHECK(report.degree == 0);
  CHECK(report.reference_elements == 32);
  CHECK(report.reference_stopped == 0);

  for (const ResolutionResult& rr : report.resolutions) {
    CHECK(rr.samples_used == 4);
    CHECK(rr.samples_stopped == 0);
    REQUIRE(rr.samples.size() == 4);
    for (std::size_t s = 0; s < rr.samples.size(); ++s) {
      const ErrorSample& es = rr.samples[s];
      CHECK(es.sample == s);
      CHECK(es.used());
      CHECK(es.e1 > 0.0);
      // Every run of one sample consumes the same increments: the coarse
      // hash must equal the reference hash, which is the coupling.
      CHECK(es.dw_hash == report.reference_hashes[s]);
    }
  }
  // Halving h shrinks the error.
  CHECK(report.resolutions[0].e1_mean > report.resolutions[1].e1_mean);
  REQUIRE(report.eoc_rows.size() == 1);
  CHECK(report.eoc_rows[0].coarse_elements == 8);
  CHECK(report.eoc_rows[0].fine_elements == 16);
  CHECK(report.eoc_rows[0].eoc_e1 ==
        doctest::Approx(std::log2(report.resolutions[0].e1_mean / report.resolutions[1].e1_mean))
            .epsilon(1e-13));
  CHECK(report.avg_eoc_e1 == doctest::Approx(report.eoc_rows[0].eoc_e1).epsilon(1e-13));
  CHECK(report.resolutions[0].e1_stderr > 0.0);

  // Same study, more worker threads: byte-identical numbers.
  StudyConfig threaded = cfg;
  threaded.threads = 3;
  ErrorReport again = convergence_study(threaded);
  REQUIRE(again.resolutions.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(again.resolutions[r].samples[s].e1 == report.resolutions[r].samples[s].e1);
      CHECK(again.resolutions[r].samples[s].e2 == report.resolutions[r].samples[s].e2);
      CHECK(again.resolutions[r].samples[s].dw_hash == report.resolutions[r].samples[s].dw_hash);
    }
    CHECK(again.resolutions[r].e1_mean == report.resolutions[r].e1_mean);
    CHECK(again.resolutions[r].e2_stderr == report.resolutions[r].e2_stderr);
  }
}

TEST_CASE("running the reference resolution against itself gives zero error") {
  StudyConfig cfg = wave_study(0, {16, 32}, 32, 2);
  ErrorReport report = convergence_study(cfg);
  REQUIRE(report.resolutions.size() == 2);
  for (const ErrorSample& es : report.resolutions[1].samples) {
    CHECK(es.used());
    CHECK(es.e1 == 0.0);
    CHECK(es.e2 == 0.0);
  }
}

TEST_CASE("stopped samples are flagged and excluded from the statistics") {
  // The wave datum has nodal total energy just above 25, so a 20 cap trips
  // every sample on the first step, in both coarse and reference runs.
  StudyConfig cfg = wave_study(0, {8}, 16, 4);
  cfg.monitors.energy_max = 20.0;
  ErrorReport report = convergence_study(cfg);
  REQUIRE(report.resolutions.size() == 1);
  const ResolutionResult& rr = report.resolutions[0];
  CHECK(rr.samples_used == 0);
  CHECK(rr.samples_stopped == 4);
  CHECK(report.reference_stopped == 4);
  CHECK(rr.e1_mean == 0.0);
  CHECK(rr.e1_stderr == 0.0);
  for (const ErrorSample& es : rr.samples) {
    CHECK(es.coarse_stopped);
    CHECK(es.reference_stopped);
    CHECK_FALSE(es.used());
  }
  CHECK(report.eoc_rows.empty());
}

TEST_CASE("study configuration is validated") {
  CHECK_THROWS_AS(convergence_study(wave_study(0, {16, 8}, 32, 1)), ConfigError);   // not ascending
  CHECK_THROWS_AS(convergence_study(wave_study(0, {8, 12}, 32, 1)), ConfigError);   // 12 does not divide 32
  CHECK_THROWS_AS(convergence_study(wave_study(0, {8, 16}, 24, 1)), ConfigError);   // 16 does not divide 24
  CHECK_THROWS_AS(convergence_study(wave_study(0, {8, 16}, 8, 1)), ConfigError);    // ref < finest
  CHECK_THROWS_AS(convergence_study(wave_study(0, {8, 16}, 32, 0)), ConfigError);   // no samples
  CHECK_THROWS_AS(convergence_study(wave_study(0, {}, 32, 1)), ConfigError);        // no resolutions
  CHECK_THROWS_AS(convergence_study(wave_study(-1, {8, 16}, 32, 1)), ConfigError);  // bad degree
  CHECK_THROWS_AS(convergence_study(wave_study(21, {8, 16}, 32, 1)), ConfigError);
}

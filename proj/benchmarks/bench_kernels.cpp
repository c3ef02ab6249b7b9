#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "stochdg/evolve.hpp"
#include "stochdg/problems.hpp"

namespace {

using namespace stochdg;

const GasModel gas = GasModel::ideal(1.4);

std::vector<Prim<1>> random_states_1d(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> loga(-1.0, 1.0), vel(-2.0, 2.0);
  std::vector<Prim<1>> out(n);
  for (Prim<1>& q : out) {
    q.rho = std::exp(loga(rng));
    q.press = std::exp(loga(rng));
    q.theta = q.press / q.rho;
    q.vel = {vel(rng)};
  }
  return out;
}

void bm_llf_flux(benchmark::State& state) {
  auto prims = random_states_1d(1024);
  std::vector<Cons<1>> cons(prims.size());
  for (std::size_t i = 0; i < prims.size(); ++i) cons[i] = prim_to_cons(prims[i], gas);
  std::size_t i = 0;
  for (auto _ : state) {
    std::size_t j = (i + 1) % prims.size();
    Cons<1> f = llf_flux(cons[i], prims[i], cons[j], prims[j], 0, 1.0, gas);
    benchmark::DoNotOptimize(f);
    i = j;
  }
}
BENCHMARK(bm_llf_flux);

void bm_ec_flux(benchmark::State& state) {
  auto prims = random_states_1d(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    std::size_t j = (i + 1) % prims.size();
    Cons<1> f = ec_flux(prims[i], prims[j], 0, gas);
    benchmark::DoNotOptimize(f);
    i = j;
  }
}
BENCHMARK(bm_ec_flux);

void bm_dg_rhs_1d(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const int elements = static_cast<int>(state.range(1));
  ProblemSetup setup = default_setup(Problem::density_wave_1d);
  OperatorSet ops = assemble_operator_set(degree);
  Mesh mesh = setup.make_mesh(elements);
  DiscreteField u = initial_condition(setup, mesh, degree, ops, gas);
  DiscreteField drift = DiscreteField::zeros(mesh, degree);
  RhsScratch scratch;
  FluxConfig fluxes;
  ValidityFloors floors;
  for (auto _ : state) {
    dg_rhs(u, ops, gas, fluxes, floors, drift, scratch);
    benchmark::DoNotOptimize(drift.data.data());
  }
  state.SetItemsProcessed(state.iterations() * u.n_nodes());
}
BENCHMARK(bm_dg_rhs_1d)->Args({0, 1024})->Args({2, 341});

void bm_dg_rhs_2d(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const int elements = static_cast<int>(state.range(1));
  ProblemSetup setup = default_setup(Problem::density_wave_2d);
  OperatorSet ops = assemble_operator_set(degree);
  Mesh mesh = setup.make_mesh(elements);
  DiscreteField u = initial_condition(setup, mesh, degree, ops, gas);
  DiscreteField drift = DiscreteField::zeros(mesh, degree);
  RhsScratch scratch;
  FluxConfig fluxes;
  ValidityFloors floors;
  for (auto _ : state) {
    dg_rhs(u, ops, gas, fluxes, floors, drift, scratch);
    benchmark::DoNotOptimize(drift.data.data());
  }
  state.SetItemsProcessed(state.iterations() * u.n_nodes());
}
BENCHMARK(bm_dg_rhs_2d)->Args({0, 32})->Args({2, 16});

void bm_euler_maruyama_step(benchmark::State& state) {
  ProblemSetup setup = default_setup(Problem::density_wave_1d);
  OperatorSet ops = assemble_operator_set(1);
  Mesh mesh = setup.make_mesh(512);
  DiscreteField u = initial_condition(setup, mesh, 1, ops, gas);
  DiscreteField out = DiscreteField::zeros(mesh, 1);
  RhsScratch scratch;
  StepContext ctx;
  ctx.ops = &ops;
  ctx.gas = gas;
  ctx.noise = NoiseSpec::make(1.0, 1, 0);
  WienerStream stream(ctx.noise, 0);
  std::array<double, 2> dw{};
  std::uint64_t step = 0;
  for (auto _ : state) {
    stream.increments(step, setup.dt, std::span<double>(dw.data(), 1));
    auto stop = euler_maruyama_step(u, step * setup.dt, setup.dt,
                                    std::span<const double>(dw.data(), 1), ctx, out, scratch);
    benchmark::DoNotOptimize(stop);
    ++step;
  }
  state.SetItemsProcessed(state.iterations() * u.n_nodes());
}
BENCHMARK(bm_euler_maruyama_step);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "cavelim/cavelim.hpp"

namespace {

using namespace cavelim;

SystemSpec rabi(double nbar) { return make_rabi({3.0, 2.5, 0.1, 1.0, nbar}); }

Operator mixed(Index d, const std::string& space) {
  return Operator(Matrix::Identity(d, d) / static_cast<double>(d), space);
}

void BM_FullApply(benchmark::State& state) {
  const SuperOp l = build_full_liouvillian(rabi(1.0), state.range(0));
  const Operator rho = mixed(l.dim(), l.space());
  for (auto _ : state) benchmark::DoNotOptimize(l.apply(rho));
  state.SetComplexityN(l.dim());
}
BENCHMARK(BM_FullApply)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SparseMatrix(benchmark::State& state) {
  const SuperOp l = build_full_liouvillian(rabi(1.0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(l.sparse_matrix());
}
BENCHMARK(BM_SparseMatrix)->Arg(10)->Arg(40);

void BM_SteadyFull(benchmark::State& state) {
  const SuperOp l = build_full_liouvillian(rabi(1.0), state.range(0));
  SteadyStateOptions opts;
  opts.route = state.range(1) ? SteadyRoute::Dense : SteadyRoute::Sparse;
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l, opts));
}
BENCHMARK(BM_SteadyFull)->Args({10, 1})->Args({10, 0})->Args({30, 0})->Unit(benchmark::kMillisecond);

void BM_SteadyOptomechEffective(benchmark::State& state) {
  const OptomechParams p{0.5, -1.0, 0.1, 0.1, 1.0, state.range(0)};
  const SuperOp l = build_effective_liouvillian(make_optomech(p), alpha_optomech_closed(p).alpha).first;
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(l));
}
BENCHMARK(BM_SteadyOptomechEffective)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_AlphaSolve(benchmark::State& state) {
  IsingCavityParams p;
  p.n_sites = static_cast<int>(state.range(0));
  p.omega_c = 8.77;
  const SystemSpec spec = make_ising_cavity(p);
  AlphaSolveOptions opts;
  opts.route = state.range(1) ? SylvesterRoute::Schur : SylvesterRoute::Vectorized;
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha_steady(spec, opts));
}
BENCHMARK(BM_AlphaSolve)->Args({4, 0})->Args({4, 1})->Args({6, 1})->Unit(benchmark::kMillisecond);

void BM_EvolveRabiFull(benchmark::State& state) {
  const SuperOp l = build_full_liouvillian(rabi(0.0), state.range(0));
  const Operator rho = mixed(l.dim(), l.space());
  EvolveOptions opts;
  opts.store_states = false;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(l, rho, {0.0, 5.0}, {}, opts));
}
BENCHMARK(BM_EvolveRabiFull)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SpectrumDense(benchmark::State& state) {
  const SuperOp l = build_full_liouvillian(rabi(1.0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(l));
}
BENCHMARK(BM_SpectrumDense)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

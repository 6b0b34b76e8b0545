#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "qroute/experiment.hpp"
#include "qroute/kernel.hpp"
#include "qroute/rng.hpp"

using namespace qroute;

namespace {

VrpInstance bench_instance(int n, int k) {
  VrpInstance inst;
  inst.n = n;
  inst.k = k;
  inst.weights.assign(static_cast<std::size_t>(n) * n, 0.0);
  const CounterRng rng(12345);
  for (int q = 0; q < inst.var_count(); ++q) {
    const auto [i, j] = var_pair(n, q);
    inst.weights[static_cast<std::size_t>(i) * n + j] = rng.uniform(q);
  }
  return inst;
}

void bm_gate_layer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Gate> gates;
  for (int q = 0; q < n; ++q) gates.push_back(make_ry(0.7 + 0.1 * q, q));
  for (int q = 0; q + 1 < n; ++q) gates.push_back(make_cnot(q, q + 1));
  for (auto _ : state) {
    Statevector psi(n);
    psi.apply(gates);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetComplexityN(n);
}

void bm_expectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VrpInstance inst = bench_instance(n == 12 ? 4 : 3, 2);
  const IsingModel model = qubo_to_ising(compile_qubo(inst));
  const DiagonalObservable obs(model);
  Statevector psi(model.m);
  for (int q = 0; q < model.m; ++q) psi.apply(make_ry(0.3 + 0.05 * q, q));
  for (auto _ : state) benchmark::DoNotOptimize(expectation(psi, obs));
}

void bm_compile_and_oracle(benchmark::State& state) {
  const VrpInstance inst = bench_instance(4, 2);
  for (auto _ : state) {
    const IsingModel model = qubo_to_ising(compile_qubo(inst));
    benchmark::DoNotOptimize(brute_force_minimum(model).min_energy);
  }
}

void bm_vqe_run(benchmark::State& state) {
  const VrpInstance inst = bench_instance(3, 2);
  const IsingModel model = qubo_to_ising(compile_qubo(inst));
  const double oracle_min = brute_force_minimum(model).min_energy;
  const CircuitTemplate circuit = build_angle(model.m, 1);
  VqeOptions options;
  options.optimizer.max_evaluations = 500;
  options.master_seed = 7;
  for (auto _ : state) {
    options.run_index = static_cast<int>(state.iterations());
    benchmark::DoNotOptimize(run_vqe(circuit, model, oracle_min, options).final_expectation);
  }
}

void bm_gram_matrix(benchmark::State& state) {
  const CircuitTemplate encoder = build_angle(4, 1);
  const CounterRng rng(77);
  std::vector<std::vector<double>> data(16, std::vector<double>(encoder.param_count));
  std::uint64_t ctr = 0;
  for (auto& p : data)
    for (double& v : p) v = rng.uniform(ctr++, 0.0, 6.28);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(encoder, data, 1).k.data());
}

}  // namespace

BENCHMARK(bm_gate_layer)->Arg(6)->Arg(12)->Arg(16);
BENCHMARK(bm_expectation)->Arg(6)->Arg(12);
BENCHMARK(bm_compile_and_oracle);
BENCHMARK(bm_vqe_run);
BENCHMARK(bm_gram_matrix);

BENCHMARK_MAIN();

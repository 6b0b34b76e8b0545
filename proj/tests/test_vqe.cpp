#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "qroute/ising.hpp"
#include "qroute/qubo.hpp"
#include "qroute/rng.hpp"
#include "qroute/vqe.hpp"
#include "qroute/vrp.hpp"

using namespace qroute;

namespace {

/// Single spin with E(|0>) = 0 and E(|1>) = 2.
IsingModel single_spin() {
  IsingModel model;
  model.m = 1;
  model.j.assign(1, 0.0);
  model.h = {-1.0};
  model.d = 1.0;
  return model;
}

VrpInstance random_triangle(std::uint64_t key) {
  VrpInstance inst;
  inst.n = 3;
  inst.k = 2;
  inst.weights.assign(9, 0.0);
  const CounterRng rng(key);
  for (int q = 0; q < 6; ++q) {
    const auto [i, j] = var_pair(3, q);
    inst.weights[static_cast<std::size_t>(i) * 3 + j] = rng.uniform(q);
  }
  return inst;
}

}  // namespace

TEST_CASE("evaluate_cost matches the closed form for one rotated spin") {
  const IsingModel model = single_spin();
  const CircuitTemplate circuit = build_angle(1, 1);
  for (const double theta : {0.0, 0.4, 1.1, 2.2, 3.14159, 5.0}) {
    const double s = std::sin(theta / 2);
    CHECK(evaluate_cost(circuit, std::vector<double>{theta}, model) ==
          doctest::Approx(2.0 * s * s).epsilon(1e-12));
  }
}

TEST_CASE("finite_diff_gradient is exact on quadratics up to rounding") {
  const Objective quad = [](std::span<const double> x) {
    return 3.0 * x[0] * x[0] + 2.0 * x[0] * x[1] + x[1] * x[1] - 4.0 * x[1];
  };
  const std::vector<double> x = {1.25, -0.75};
  const std::vector<double> g = finite_diff_gradient(quad, x, 1e-5);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == doctest::Approx(6.0 * x[0] + 2.0 * x[1]).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(2.0 * x[0] + 2.0 * x[1] - 4.0).epsilon(1e-6));
}

TEST_CASE("a single rotated spin reaches its ground state within 200 evaluations") {
  const IsingModel model = single_spin();
  const CircuitTemplate circuit = build_angle(1, 1);
  const OracleResult oracle = brute_force_minimum(model);
  REQUIRE(oracle.min_energy == doctest::Approx(0.0));

  for (const OptimizerFamily family :
       {OptimizerFamily::Cobyla, OptimizerFamily::LbfgsFd, OptimizerFamily::Slsqp}) {
    VqeOptions options;
    options.optimizer.family = family;
    options.optimizer.max_evaluations = 200;
    options.master_seed = 7;
    const VqeRunRecord record = run_vqe(circuit, model, oracle.min_energy, options);
    CHECK(record.final_expectation == doctest::Approx(0.0).epsilon(1e-3));
    CHECK(record.argmax_bits == 0);
    CHECK(record.reached_minimum);
    CHECK(record.evaluations_used <= 200);
    CHECK_FALSE(record.failed);
  }
}

TEST_CASE("runs are reproducible from master seed and run index alone") {
  const VrpInstance inst = random_triangle(3);
  const IsingModel model = qubo_to_ising(compile_qubo(inst));
  const OracleResult oracle = brute_force_minimum(model);
  const CircuitTemplate circuit = build_angle(model.m, 1);

  VqeOptions options;
  options.optimizer.max_evaluations = 400;
  options.master_seed = 20260814;
  options.run_index = 11;

  const VqeRunRecord a = run_vqe(circuit, model, oracle.min_energy, options);
  const VqeRunRecord b = run_vqe(circuit, model, oracle.min_energy, options);
  CHECK(a.initial_params == b.initial_params);
  CHECK(a.final_params == b.final_params);
  CHECK(a.final_expectation == b.final_expectation);
  CHECK(a.argmax_bits == b.argmax_bits);
  CHECK(a.evaluations_used == b.evaluations_used);

  options.run_index = 12;
  const VqeRunRecord c = run_vqe(circuit, model, oracle.min_energy, options);
  CHECK(a.initial_params != c.initial_params);
  CHECK(a.seed != c.seed);
}

TEST_CASE("initial parameters land in the half-open box from zero to two pi") {
  const VrpInstance inst = random_triangle(5);
  const IsingModel model = qubo_to_ising(compile_qubo(inst));
  const CircuitTemplate circuit = build_angle(model.m, 2);
  VqeOptions options;
  options.optimizer.max_evaluations = 1;
  options.master_seed = 99;
  const VqeRunRecord record = run_vqe(circuit, model, 0.0, options);
  REQUIRE(record.initial_params.size() == static_cast<std::size_t>(circuit.param_count));
  for (const double p : record.initial_params) {
    CHECK(p >= 0.0);
    CHECK(p < 2.0 * 3.14159265358979324);
  }
}

TEST_CASE("the optimized expectation never undercuts the exhaustive minimum") {
  for (std::uint64_t key = 40; key < 43; ++key) {
    const VrpInstance inst = random_triangle(key);
    const IsingModel model = qubo_to_ising(compile_qubo(inst));
    const OracleResult oracle = brute_force_minimum(model);
    for (const EncodingFamily family :
         {EncodingFamily::Angle, EncodingFamily::HigherOrder, EncodingFamily::Iqp}) {
      const CircuitTemplate circuit = build_encoding(family, model.m, 1);
      VqeOptions options;
      options.optimizer.max_evaluations = 300;
      options.master_seed = key;
      const VqeRunRecord record = run_vqe(circuit, model, oracle.min_energy, options);
      CHECK(record.final_expectation >= oracle.min_energy - 1e-9);
      CHECK(record.oracle_gap == doctest::Approx(record.argmax_energy - oracle.min_energy));
    }
  }
}

TEST_CASE("vqe csv header and rows are stable") {
  CHECK(vqe_csv_header() ==
        "run_index,seed,encoding,layers,optimizer,final_expectation,argmax_energy,"
        "oracle_min,reached_minimum,evaluations_used");

  VqeRunRecord record;
  record.run_index = 3;
  record.seed = 12345;
  record.encoding = EncodingFamily::HigherOrder;
  record.layers = 2;
  record.optimizer = OptimizerFamily::Slsqp;
  record.final_expectation = 1.5;
  record.argmax_energy = 2.0;
  record.oracle_min = 1.5;
  record.reached_minimum = true;
  record.evaluations_used = 42;
  CHECK(vqe_csv_row(record) == "3,12345,higher-order,2,slsqp,1.5,2,1.5,1,42");
}

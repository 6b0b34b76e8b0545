#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qroute/ising.hpp"
#include "qroute/qubo.hpp"
#include "qroute/rng.hpp"
#include "qroute/vrp.hpp"

using namespace qroute;

namespace {

VrpInstance random_instance(int n, int k, std::uint64_t key) {
  VrpInstance inst;
  inst.n = n;
  inst.k = k;
  inst.weights.assign(static_cast<std::size_t>(n) * n, 0.0);
  const CounterRng rng(key);
  for (int q = 0; q < inst.var_count(); ++q) {
    const auto [i, j] = var_pair(n, q);
    inst.weights[static_cast<std::size_t>(i) * n + j] = rng.uniform(q);
  }
  return inst;
}

/// Recomputes the penalty objective from its definition, without touching
/// the compiled coefficients.
double penalty_objective(const VrpInstance& inst, const Assignment& x) {
  const double a = inst.effective_penalty();
  double value = route_cost(inst, x);
  std::vector<int> out(inst.n, 0);
  std::vector<int> in(inst.n, 0);
  for (int q = 0; q < inst.var_count(); ++q) {
    if (!x[q]) continue;
    const auto [i, j] = var_pair(inst.n, q);
    ++out[i];
    ++in[j];
  }
  for (int i = 1; i < inst.n; ++i) {
    value += a * (1.0 - out[i]) * (1.0 - out[i]);
    value += a * (1.0 - in[i]) * (1.0 - in[i]);
  }
  value += a * (inst.k - out[0]) * (inst.k - out[0]);
  value += a * (inst.k - in[0]) * (inst.k - in[0]);
  return value;
}

}  // namespace

TEST_CASE("compiled qubo equals the penalty objective on every assignment") {
  for (std::uint64_t key = 0; key < 4; ++key) {
    const VrpInstance inst = random_instance(3, 2, key);
    const QuboModel qubo = compile_qubo(inst);
    CHECK(qubo.m == 6);
    CHECK(qubo.c == doctest::Approx(2.0 * inst.effective_penalty() * (3 - 1) +
                                    2.0 * inst.effective_penalty() * 2 * 2));
    for (std::uint64_t z = 0; z < 64; ++z) {
      const Assignment x = assignment_from_bits(z, 6);
      CHECK(qubo_energy(qubo, x) == doctest::Approx(penalty_objective(inst, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("qubo and ising energies agree exactly under s = 2x - 1") {
  for (std::uint64_t key = 10; key < 14; ++key) {
    const VrpInstance inst = random_instance(3, 2, key);
    const QuboModel qubo = compile_qubo(inst);
    const IsingModel ising = qubo_to_ising(qubo);
    REQUIRE(ising.m == qubo.m);
    for (std::uint64_t z = 0; z < 64; ++z) {
      const Assignment x = assignment_from_bits(z, 6);
      CHECK(ising_energy(ising, x) == doctest::Approx(qubo_energy(qubo, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("linear qubo term maps to a frozen single-spin model") {
  QuboModel qubo;
  qubo.m = 1;
  qubo.q.assign(1, 0.0);
  qubo.g = {2.0};
  qubo.c = 0.0;
  const IsingModel ising = qubo_to_ising(qubo);
  // 2x = s + 1, and the spin energy reads -h s + d.
  CHECK(ising.h[0] == doctest::Approx(-1.0));
  CHECK(ising.d == doctest::Approx(1.0));
  CHECK(ising_energy(ising, {0}) == doctest::Approx(0.0));
  CHECK(ising_energy(ising, {1}) == doctest::Approx(2.0));
}

TEST_CASE("quadratic qubo term maps to frozen couplings and fields") {
  QuboModel qubo;
  qubo.m = 2;
  qubo.q.assign(4, 0.0);
  qubo.add_quad(0, 1, 4.0);
  qubo.g = {1.0, 2.0};
  qubo.c = 3.0;
  const IsingModel ising = qubo_to_ising(qubo);
  CHECK(ising.coupling(0, 1) == doctest::Approx(-1.0));
  CHECK(ising.h[0] == doctest::Approx(-1.5));
  CHECK(ising.h[1] == doctest::Approx(-2.0));
  CHECK(ising.d == doctest::Approx(5.5));
  for (std::uint64_t z = 0; z < 4; ++z) {
    const Assignment x = assignment_from_bits(z, 2);
    CHECK(ising_energy(ising, x) == doctest::Approx(qubo_energy(qubo, x)));
  }
}

TEST_CASE("add_quad folds both argument orders into the upper triangle") {
  QuboModel qubo;
  qubo.m = 3;
  qubo.q.assign(9, 0.0);
  qubo.add_quad(2, 0, 1.25);
  qubo.add_quad(0, 2, 0.75);
  CHECK(qubo.quad(0, 2) == doctest::Approx(2.0));
}

TEST_CASE("ising text round-trips exactly") {
  const VrpInstance inst = random_instance(4, 2, 77);
  const IsingModel ising = qubo_to_ising(compile_qubo(inst));
  const IsingModel back = parse_ising_text(export_ising_text(ising));
  REQUIRE(back.m == ising.m);
  CHECK(back.d == ising.d);
  for (int i = 0; i < ising.m; ++i) {
    CHECK(back.h[i] == ising.h[i]);
    for (int j = i + 1; j < ising.m; ++j) CHECK(back.coupling(i, j) == ising.coupling(i, j));
  }
  CHECK_THROWS_AS(parse_ising_text("Q 0 1 2"), std::invalid_argument);
  CHECK_THROWS_AS(load_ising_text("/nonexistent/model.txt"), std::invalid_argument);
}

TEST_CASE("brute force minimum matches a naive scan") {
  IsingModel model;
  model.m = 10;
  model.j.assign(100, 0.0);
  model.h.assign(10, 0.0);
  const CounterRng rng(424242);
  std::uint64_t ctr = 0;
  for (int i = 0; i < model.m; ++i) {
    model.h[i] = rng.uniform(ctr++, -1.0, 1.0);
    for (int j = i + 1; j < model.m; ++j)
      model.j[static_cast<std::size_t>(i) * model.m + j] = rng.uniform(ctr++, -1.0, 1.0);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> arg;
  for (std::uint64_t z = 0; z < (1ull << model.m); ++z) {
    const double e = ising_energy(model, assignment_from_bits(z, model.m));
    if (e < best - 1e-12) {
      best = e;
      arg = {z};
    } else if (std::abs(e - best) <= 1e-12) {
      arg.push_back(z);
    }
  }
  const OracleResult oracle = brute_force_minimum(model);
  CHECK(oracle.min_energy == doctest::Approx(best).epsilon(1e-12));
  CHECK(oracle.argmin == arg);
}

TEST_CASE("brute force oracle finds the unique routing ground state") {
  for (std::uint64_t key = 100; key < 105; ++key) {
    const VrpInstance inst = random_instance(3, 2, key);
    const OracleResult oracle = brute_force_minimum(qubo_to_ising(compile_qubo(inst)));
    REQUIRE(oracle.argmin.size() == 1);
    CHECK(oracle.argmin[0] == 23);
    const double expect =
        inst.weight(0, 1) + inst.weight(1, 0) + inst.weight(0, 2) + inst.weight(2, 0);
    CHECK(oracle.min_energy == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("brute force oracle refuses oversized registers") {
  IsingModel model;
  model.m = 25;
  model.j.assign(625, 0.0);
  model.h.assign(25, 0.0);
  CHECK_THROWS_AS(brute_force_minimum(model), std::invalid_argument);
}

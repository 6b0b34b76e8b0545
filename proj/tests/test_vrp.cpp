#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "doctest.h"
#include "qroute/vrp.hpp"

using namespace qroute;

namespace {

VrpInstance triangle() {
  VrpInstance inst;
  inst.n = 3;
  inst.k = 2;
  inst.weights = {0.0, 1.5, 2.25, 3.0, 0.0, 4.5, 5.25, 6.0, 0.0};
  return inst;
}

}  // namespace

TEST_CASE("var_index enumerates ordered pairs row-major without the diagonal") {
  CHECK(var_index(3, 0, 1) == 0);
  CHECK(var_index(3, 0, 2) == 1);
  CHECK(var_index(3, 1, 0) == 2);
  CHECK(var_index(3, 1, 2) == 3);
  CHECK(var_index(3, 2, 0) == 4);
  CHECK(var_index(3, 2, 1) == 5);
  for (int n = 2; n <= 6; ++n) {
    int q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        CHECK(var_index(n, i, j) == q);
        CHECK(var_pair(n, q) == std::pair<int, int>{i, j});
        ++q;
      }
    CHECK(q == n * (n - 1));
  }
}

TEST_CASE("validate rejects malformed instances") {
  CHECK_NOTHROW(validate(triangle()));

  VrpInstance inst = triangle();
  inst.n = 1;
  inst.weights = {0.0};
  inst.k = 1;
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);

  inst = triangle();
  inst.k = 0;
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);
  inst.k = 3;
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);

  inst = triangle();
  inst.weights.pop_back();
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);

  inst = triangle();
  inst.weights[1] = -0.5;
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);

  inst = triangle();
  inst.weights[5] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(inst), std::invalid_argument);
}

TEST_CASE("effective penalty defaults to n times one plus the max weight") {
  VrpInstance inst = triangle();
  CHECK(inst.max_weight() == doctest::Approx(6.0));
  CHECK(inst.effective_penalty() == doctest::Approx(3.0 * 7.0));
  inst.penalty_a = 2.5;
  CHECK(inst.effective_penalty() == doctest::Approx(2.5));
}

TEST_CASE("assignment_from_bits unpacks low bits LSB first") {
  const Assignment x = assignment_from_bits(0b010111u, 6);
  const Assignment expect = {1, 1, 1, 0, 1, 0};
  CHECK(x == expect);
  CHECK(assignment_from_bits(0, 3) == Assignment{0, 0, 0});
}

TEST_CASE("three nodes with two vehicles admit exactly one feasible assignment") {
  const VrpInstance inst = triangle();
  int feasible = 0;
  std::uint64_t hit = 0;
  for (std::uint64_t z = 0; z < 64; ++z) {
    if (is_feasible(inst, assignment_from_bits(z, 6))) {
      ++feasible;
      hit = z;
    }
  }
  CHECK(feasible == 1);
  CHECK(hit == 23);  // x01, x02, x10, x20 set: two out-and-back routes
  CHECK(route_cost(inst, assignment_from_bits(23, 6)) == doctest::Approx(12.0));
}

TEST_CASE("four nodes with two vehicles admit six feasible assignments") {
  VrpInstance inst;
  inst.n = 4;
  inst.k = 2;
  inst.weights.assign(16, 1.0);
  for (int i = 0; i < 4; ++i) inst.weights[static_cast<std::size_t>(i) * 4 + i] = 0.0;
  int feasible = 0;
  for (std::uint64_t z = 0; z < (1ull << 12); ++z)
    if (is_feasible(inst, assignment_from_bits(z, 12))) ++feasible;
  CHECK(feasible == 6);
}

TEST_CASE("route_cost sums the weights of the selected arcs") {
  const VrpInstance inst = triangle();
  Assignment x(6, 0);
  CHECK(route_cost(inst, x) == doctest::Approx(0.0));
  x[var_index(3, 1, 2)] = 1;
  x[var_index(3, 2, 1)] = 1;
  CHECK(route_cost(inst, x) == doctest::Approx(4.5 + 6.0));
  CHECK_THROWS_AS(route_cost(inst, Assignment(5, 0)), std::invalid_argument);
}

TEST_CASE("instance json parses, validates, and reports errors") {
  const std::string text =
      R"({"n": 3, "k": 2, "weights": [[0, 1.5, 2.25], [3.0, 0, 4.5], [5.25, 6.0, 0]]})";
  const VrpInstance inst = parse_instance_json(text);
  CHECK(inst.n == 3);
  CHECK(inst.k == 2);
  CHECK(inst.penalty_a == doctest::Approx(0.0));
  CHECK(inst.weight(2, 1) == doctest::Approx(6.0));
  CHECK(inst.weight(0, 2) == doctest::Approx(2.25));

  const VrpInstance with_penalty =
      parse_instance_json(R"({"n": 2, "k": 1, "weights": [[0, 2], [3, 0]], "penalty_a": 9.5})");
  CHECK(with_penalty.effective_penalty() == doctest::Approx(9.5));

  CHECK_THROWS_AS(parse_instance_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"n": 3, "k": 2, "weights": [[0, 1], [1, 0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_instance_json("/nonexistent/instance.json"), std::invalid_argument);
}

TEST_CASE("bundled triangle instance file loads") {
  const VrpInstance inst = load_instance_json(std::string(QROUTE_TEST_DATA_DIR) + "/triangle.json");
  CHECK(inst.n == 3);
  CHECK(inst.k == 2);
  CHECK(route_cost(inst, assignment_from_bits(23, 6)) == doctest::Approx(12.0));
}

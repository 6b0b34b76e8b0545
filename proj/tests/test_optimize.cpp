#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qroute/optimize.hpp"

using namespace qroute;

namespace {

const std::vector<OptimizerFamily> kFamilies = {OptimizerFamily::Cobyla, OptimizerFamily::LbfgsFd,
                                                OptimizerFamily::Slsqp};

OptimizerSpec spec_for(OptimizerFamily family, int budget) {
  OptimizerSpec spec;
  spec.family = family;
  spec.max_evaluations = budget;
  return spec;
}

}  // namespace

TEST_CASE("every optimizer family solves a shifted quadratic bowl") {
  const Objective bowl = [](std::span<const double> x) {
    const double a = x[0] - 1.5;
    const double b = x[1] + 0.5;
    const double c = x[2] - 3.0;
    return a * a + 2.0 * b * b + 0.5 * c * c + 4.0;
  };
  const std::vector<double> x0 = {0.0, 0.0, 0.0};
  for (const OptimizerFamily family : kFamilies) {
    const OptimizeResult result = minimize(bowl, x0, spec_for(family, 2000));
    CHECK(result.best_value == doctest::Approx(4.0).epsilon(1e-4));
    CHECK(result.best_params[0] == doctest::Approx(1.5).epsilon(1e-2));
    CHECK(result.best_params[1] == doctest::Approx(-0.5).epsilon(1e-2));
    CHECK(result.best_params[2] == doctest::Approx(3.0).epsilon(1e-2));
    CHECK_FALSE(result.failed);
    CHECK(result.evaluations <= 2000);
  }
}

TEST_CASE("the evaluation budget is never exceeded and is reported exactly") {
  for (const OptimizerFamily family : kFamilies) {
    for (const int budget : {1, 7, 50, 333}) {
      int calls = 0;
      const Objective counted = [&calls](std::span<const double> x) {
        ++calls;
        return std::cos(x[0]) + 0.1 * x[0] * x[0];
      };
      const OptimizeResult result = minimize(counted, std::vector<double>{0.3}, spec_for(family, budget));
      CHECK(calls <= budget);
      CHECK(result.evaluations == calls);
    }
  }
}

TEST_CASE("best value tracks the lowest evaluation ever seen") {
  for (const OptimizerFamily family : kFamilies) {
    double lowest = std::numeric_limits<double>::infinity();
    std::vector<double> lowest_x;
    const Objective recorded = [&](std::span<const double> x) {
      const double v = std::sin(3.0 * x[0]) + 0.05 * (x[0] - 1.0) * (x[0] - 1.0);
      if (v < lowest) {
        lowest = v;
        lowest_x.assign(x.begin(), x.end());
      }
      return v;
    };
    const OptimizeResult result = minimize(recorded, std::vector<double>{0.0}, spec_for(family, 400));
    CHECK(result.best_value == doctest::Approx(lowest));
    REQUIRE(result.best_params.size() == lowest_x.size());
    CHECK(result.best_params[0] == doctest::Approx(lowest_x[0]));
  }
}

TEST_CASE("restarts explore a multimodal objective within one budget") {
  // A descent from 0 reaches the shallow well at x = 1 (value -0.3); only a
  // restarted descent can reach the deep well at x = 5 (value -1).
  const Objective trap = [](std::span<const double> x) {
    const double deep = x[0] - 5.0;
    const double shallow = x[0] - 1.0;
    return -std::exp(-deep * deep) - 0.3 * std::exp(-4.0 * shallow * shallow);
  };
  for (const OptimizerFamily family : kFamilies) {
    OptimizerSpec spec = spec_for(family, 3000);
    spec.restart_key = 11;
    const OptimizeResult result = minimize(trap, std::vector<double>{0.0}, spec);
    CHECK(result.best_value < -0.9);
  }
}

TEST_CASE("results are a pure function of the spec and the restart key") {
  const Objective wavy = [](std::span<const double> x) {
    return std::sin(x[0]) + std::sin(3.0 * x[1]) / 3.0 + 0.1 * x[0] * x[0] + 0.1 * x[1] * x[1];
  };
  for (const OptimizerFamily family : kFamilies) {
    OptimizerSpec spec = spec_for(family, 500);
    spec.restart_key = 42;
    const OptimizeResult a = minimize(wavy, std::vector<double>{0.2, 0.4}, spec);
    const OptimizeResult b = minimize(wavy, std::vector<double>{0.2, 0.4}, spec);
    CHECK(a.best_value == b.best_value);
    CHECK(a.best_params == b.best_params);
    CHECK(a.evaluations == b.evaluations);
  }
}

TEST_CASE("a non-finite objective value ends the search gracefully") {
  for (const OptimizerFamily family : kFamilies) {
    int calls = 0;
    const Objective poisoned = [&calls](std::span<const double> x) {
      ++calls;
      if (calls > 3) return std::numeric_limits<double>::quiet_NaN();
      return x[0] * x[0];
    };
    const OptimizeResult result = minimize(poisoned, std::vector<double>{1.0}, spec_for(family, 200));
    CHECK(result.failed);
    CHECK(result.message == "objective returned a non-finite value");
    CHECK(result.evaluations < 200);
  }
}

TEST_CASE("minimize validates its arguments") {
  const Objective ok = [](std::span<const double> x) { return x[0] * x[0]; };
  CHECK_THROWS_AS(minimize(ok, std::vector<double>{}, spec_for(OptimizerFamily::Cobyla, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      minimize(ok, std::vector<double>{std::numeric_limits<double>::infinity()},
               spec_for(OptimizerFamily::Cobyla, 10)),
      std::invalid_argument);
  CHECK_THROWS_AS(minimize(ok, std::vector<double>{1.0}, spec_for(OptimizerFamily::Cobyla, 0)),
                  std::invalid_argument);
  OptimizerSpec bad_tol = spec_for(OptimizerFamily::Slsqp, 10);
  bad_tol.tolerance = -1.0;
  CHECK_THROWS_AS(minimize(ok, std::vector<double>{1.0}, bad_tol), std::invalid_argument);
}

TEST_CASE("gradient families cope with a narrow curved valley") {
  const Objective rosenbrock = [](std::span<const double> x) {
    const double a = 1.0 - x[0];
    const double b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  for (const OptimizerFamily family : {OptimizerFamily::LbfgsFd, OptimizerFamily::Slsqp}) {
    const OptimizeResult result =
        minimize(rosenbrock, std::vector<double>{-1.2, 1.0}, spec_for(family, 5000));
    CHECK(result.best_value < 1e-3);
  }
}

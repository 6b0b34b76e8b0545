#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qroute {

/// Three local minimizers sharing one evaluation-budget contract:
///  - Cobyla: derivative-free trust region over a linear interpolation model.
///  - LbfgsFd: limited-memory quasi-Newton on finite-difference gradients.
///  - Slsqp: full-memory damped BFGS with a quadratic line search, the
///    unconstrained core of a sequential quadratic programming step.
enum class OptimizerFamily { Cobyla, LbfgsFd, Slsqp };

std::string optimizer_name(OptimizerFamily family);  // "cobyla", "lbfgs", "slsqp"
OptimizerFamily optimizer_from_name(const std::string& name);

struct OptimizerSpec {
  OptimizerFamily family = OptimizerFamily::Cobyla;
  int max_evaluations = 5000;
  double tolerance = 1e-6;
  double fd_step = 1e-6;      ///< finite-difference step where applicable
  double initial_step = 1.0;  ///< initial trust radius / simplex edge
  std::uint64_t restart_key = 0;  ///< seeds the deterministic restart draws
};

struct OptimizeResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int evaluations = 0;
  bool failed = false;  ///< objective returned a non-finite value
  std::string message;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes from x0, never exceeding spec.max_evaluations objective calls.
/// When a descent converges with budget to spare, the search restarts from a
/// fresh point drawn deterministically from restart_key (suited to the
/// 2pi-periodic landscapes this library produces) and keeps the best result.
/// best_params / best_value always track the best point actually evaluated.
/// A non-finite objective value stops the search and sets failed.
OptimizeResult minimize(const Objective& objective, std::span<const double> x0,
                        const OptimizerSpec& spec);

}  // namespace qroute

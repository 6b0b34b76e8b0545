#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qroute/ansatz.hpp"
#include "qroute/optimize.hpp"

namespace qroute {

/// Energy of the circuit bound at params, against the diagonal Ising
/// observable; this is the objective the optimizers minimize.
double evaluate_cost(const CircuitTemplate& circuit, std::span<const double> params,
                     const IsingModel& model);

/// Central differences, (f(x + step e_i) - f(x - step e_i)) / (2 step).
std::vector<double> finite_diff_gradient(const Objective& objective,
                                         std::span<const double> x, double step);

struct VqeRunRecord {
  int run_index = 0;
  std::uint64_t seed = 0;
  EncodingFamily encoding = EncodingFamily::Angle;
  int layers = 1;
  OptimizerFamily optimizer = OptimizerFamily::Cobyla;
  std::vector<double> initial_params;
  std::vector<double> final_params;
  double final_expectation = 0.0;
  std::uint64_t argmax_bits = 0;    ///< most probable basis state at the optimum
  double argmax_energy = 0.0;
  double oracle_min = 0.0;
  double oracle_gap = 0.0;          ///< argmax_energy - oracle_min
  bool reached_minimum = false;     ///< |oracle_gap| <= 1e-6
  int evaluations_used = 0;
  double wall_ms = 0.0;
  bool failed = false;              ///< non-finite objective ended the run
};

struct VqeOptions {
  OptimizerSpec optimizer;
  int run_index = 0;
  std::uint64_t master_seed = 0;
};

/// One optimization run: the initial point is drawn uniformly from [0, 2 pi)
/// per parameter out of a stream keyed by hash(master_seed, run_index), so a
/// run is reproducible from (master_seed, run_index) alone.  The solution is
/// the argmax-probability basis state of the final circuit, judged against
/// the supplied exhaustive minimum.
VqeRunRecord run_vqe(const CircuitTemplate& circuit, const IsingModel& model,
                     double oracle_min, const VqeOptions& options);

std::string vqe_csv_header();
std::string vqe_csv_row(const VqeRunRecord& record);

}  // namespace qroute

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qroute/qubo.hpp"

namespace qroute {

/// Spin objective E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + d over
/// s_i in {-1, +1}.  Couplings are stored strictly upper triangular.
struct IsingModel {
  int m = 0;
  std::vector<double> j;  ///< m*m row-major, nonzero only for i < j
  std::vector<double> h;
  double d = 0.0;

  double coupling(int i, int j) const;
};

/// Substitutes x_i = (s_i + 1) / 2 into the QUBO and collects terms, so the
/// two energies agree exactly on every assignment under s = 2x - 1.
IsingModel qubo_to_ising(const QuboModel& model);

/// Energy of the spin configuration induced by bits (bit value b -> s = 2b - 1).
double ising_energy(const IsingModel& model, const Assignment& bits);

struct OracleResult {
  double min_energy = 0.0;
  std::vector<std::uint64_t> argmin;  ///< all minimizers within 1e-12, ascending
};

/// Exhaustive minimum over all 2^m assignments; refuses m > 24.
OracleResult brute_force_minimum(const IsingModel& model);

/// Plain-text exchange format, one term per line:
///   J <i> <j> <value>
///   h <i> <value>
///   d <value>
std::string export_ising_text(const IsingModel& model);
IsingModel parse_ising_text(const std::string& text);
IsingModel load_ising_text(const std::string& path);

}  // namespace qroute

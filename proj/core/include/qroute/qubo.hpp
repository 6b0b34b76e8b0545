#pragma once

#include <vector>

#include "qroute/vrp.hpp"

namespace qroute {

/// Quadratic unconstrained binary objective
///   E(x) = sum_{i<j} Q_ij x_i x_j + sum_i g_i x_i + c
/// with Q stored strictly upper triangular; x_i^2 = x_i folds any diagonal
/// contribution into g.
struct QuboModel {
  int m = 0;
  std::vector<double> q;  ///< m*m row-major, nonzero only for i < j
  std::vector<double> g;
  double c = 0.0;

  double quad(int i, int j) const;
  /// Accumulates into the upper-triangular slot regardless of argument order.
  void add_quad(int i, int j, double value);
};

double qubo_energy(const QuboModel& model, const Assignment& x);

/// Expands the penalty-form routing objective
///   cost + A * [ sum_{i>=1} (1 - outdeg_i)^2 + (1 - indeg_i)^2 ]
///        + A * [ (k - outdeg_0)^2 + (k - indeg_0)^2 ]
/// into QUBO coefficients.  The constant comes out as 2A(n-1) + 2Ak^2.
QuboModel compile_qubo(const VrpInstance& inst);

}  // namespace qroute

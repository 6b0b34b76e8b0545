#pragma once

#include <span>
#include <string>
#include <vector>

#include "qroute/ansatz.hpp"

namespace qroute {

/// Dense symmetric kernel matrix.
struct KernelMatrix {
  int m = 0;
  std::vector<double> k;  ///< m*m row-major

  double at(int i, int j) const { return k[static_cast<std::size_t>(i) * m + j]; }
  void set(int i, int j, double value);
};

/// Fidelity kernel kappa(x, z) = |<0| U(x)^dagger U(z) |0>|^2: both feature
/// vectors are bound into the same encoding template and the all-zeros
/// transition probability is read out.
double kernel_entry(const CircuitTemplate& encoder, std::span<const double> x,
                    std::span<const double> z);

/// Gram matrix of the dataset; entries are computed for i <= j and mirrored,
/// optionally across threads (the result does not depend on the thread count).
KernelMatrix gram_matrix(const CircuitTemplate& encoder,
                         const std::vector<std::vector<double>>& data,
                         int threads = 1);

struct LsSvmSolution {
  double bias = 0.0;
  std::vector<double> alpha;
  double residual = 0.0;  ///< relative residual of the solved block system
};

/// Solves the least-squares SVM block system
///   [ 0   1^T          ] [ b     ]   [ 0 ]
///   [ 1   K + I/gamma  ] [ alpha ] = [ y ]
/// by dense LU; throws std::runtime_error with a condition diagnostic when
/// the system is numerically singular.
LsSvmSolution solve_ls_svm(const KernelMatrix& gram, const std::vector<double>& y,
                           double gamma = 1e6);

/// sum_i alpha_i kappa(x_i, x) + b; the predicted label is its sign.
double decision_value(const CircuitTemplate& encoder,
                      const std::vector<std::vector<double>>& train_x,
                      const LsSvmSolution& solution, std::span<const double> x);

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<double> y;  ///< labels, +1 / -1
};

/// CSV rows of feature values with the label (+1 / -1) in the last column.
Dataset parse_dataset_csv(const std::string& text);
Dataset load_dataset_csv(const std::string& path);

std::string gram_csv(const KernelMatrix& gram);

}  // namespace qroute

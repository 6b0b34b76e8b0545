#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qroute {

/// Directed arc-selection model of a vehicle routing problem: the binary
/// decision variable x(i, j) is 1 when some vehicle travels directly from
/// node i to node j.  Node 0 is the depot; k vehicles leave it and return
/// to it, and every other node is entered and left exactly once.
struct VrpInstance {
  int n = 0;                    ///< number of nodes, depot included
  int k = 1;                    ///< number of vehicles
  std::vector<double> weights;  ///< n*n row-major travel costs, diagonal ignored
  double penalty_a = 0.0;       ///< constraint penalty; <= 0 selects the default

  double weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
  double max_weight() const;

  /// Penalty actually used when compiling: penalty_a when positive, otherwise
  /// n * (1 + max weight), which strictly dominates any tour-cost difference.
  double effective_penalty() const;

  int var_count() const { return n * (n - 1); }
};

/// Throws std::invalid_argument when n < 2, k is outside [1, n-1], the weight
/// matrix has the wrong shape, or any off-diagonal weight is negative or
/// non-finite.
void validate(const VrpInstance& inst);

/// Flat index of x(i, j): row-major over ordered pairs with the diagonal
/// skipped.  For n = 3: (0,1) -> 0, (0,2) -> 1, (1,0) -> 2, ..., (2,1) -> 5.
int var_index(int n, int i, int j);

/// Inverse of var_index.
std::pair<int, int> var_pair(int n, int q);

/// One 0/1 value per decision variable, indexed by var_index.
using Assignment = std::vector<std::uint8_t>;

/// Unpacks the low m bits of z, bit q giving variable q.
Assignment assignment_from_bits(std::uint64_t z, int m);

/// True when the depot has out-degree and in-degree k and every other node
/// has out-degree and in-degree exactly 1.  Note that for k < n - 1 a few
/// degree-feasible assignments contain cycles that never touch the depot;
/// they are accepted here because the penalty terms cannot see them either.
bool is_feasible(const VrpInstance& inst, const Assignment& x);

/// Total travel cost of the selected arcs.
double route_cost(const VrpInstance& inst, const Assignment& x);

/// Instance files are JSON objects with keys "n", "k", "weights" (n x n array
/// of arrays, diagonal entries ignored) and optional "penalty_a".
VrpInstance parse_instance_json(const std::string& text);
VrpInstance load_instance_json(const std::string& path);

}  // namespace qroute

#include "qroute/qubo.hpp"

#include <stdexcept>

namespace qroute {

double QuboModel::quad(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= m || j >= m)
    throw std::invalid_argument("quadratic term needs distinct indices inside [0, m)");
  if (i > j) std::swap(i, j);
  return q[static_cast<std::size_t>(i) * m + j];
}

void QuboModel::add_quad(int i, int j, double value) {
  if (i == j || i < 0 || j < 0 || i >= m || j >= m)
    throw std::invalid_argument("quadratic term needs distinct indices inside [0, m)");
  if (i > j) std::swap(i, j);
  q[static_cast<std::size_t>(i) * m + j] += value;
}

double qubo_energy(const QuboModel& model, const Assignment& x) {
  if (x.size() != static_cast<std::size_t>(model.m))
    throw std::invalid_argument("assignment length must equal m");
  double e = model.c;
  for (int i = 0; i < model.m; ++i) {
    if (!x[i]) continue;
    e += model.g[i];
    for (int j = i + 1; j < model.m; ++j)
      if (x[j]) e += model.q[static_cast<std::size_t>(i) * model.m + j];
  }
  return e;
}

namespace {

/// Adds A * (constant - sum of the listed variables)^2, expanded with
/// x^2 = x: the squared sum turns into the variables themselves plus twice
/// every cross pair.
void add_squared_penalty(QuboModel& model, const std::vector<int>& vars, double constant,
                         double a) {
  model.c += a * constant * constant;
  for (std::size_t u = 0; u < vars.size(); ++u) {
    model.g[vars[u]] += a * (1.0 - 2.0 * constant);
    for (std::size_t v = u + 1; v < vars.size(); ++v)
      model.add_quad(vars[u], vars[v], 2.0 * a);
  }
}

}  // namespace

QuboModel compile_qubo(const VrpInstance& inst) {
  validate(inst);
  const int n = inst.n;
  const double a = inst.effective_penalty();

  QuboModel model;
  model.m = inst.var_count();
  model.q.assign(static_cast<std::size_t>(model.m) * model.m, 0.0);
  model.g.assign(static_cast<std::size_t>(model.m), 0.0);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) model.g[var_index(n, i, j)] += inst.weight(i, j);

  for (int i = 0; i < n; ++i) {
    std::vector<int> outgoing, incoming;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      outgoing.push_back(var_index(n, i, j));
      incoming.push_back(var_index(n, j, i));
    }
    const double degree = (i == 0) ? inst.k : 1.0;
    add_squared_penalty(model, outgoing, degree, a);
    add_squared_penalty(model, incoming, degree, a);
  }
  return model;
}

}  // namespace qroute

#include "qroute/vrp.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qroute {

double VrpInstance::max_weight() const {
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && weight(i, j) > best) best = weight(i, j);
  return best;
}

double VrpInstance::effective_penalty() const {
  if (penalty_a > 0.0) return penalty_a;
  return n * (1.0 + max_weight());
}

void validate(const VrpInstance& inst) {
  if (inst.n < 2) throw std::invalid_argument("instance needs at least 2 nodes");
  if (inst.k < 1 || inst.k > inst.n - 1)
    throw std::invalid_argument("vehicle count must lie in [1, n-1]");
  if (inst.weights.size() != static_cast<std::size_t>(inst.n) * inst.n)
    throw std::invalid_argument("weight matrix must be n x n");
  for (int i = 0; i < inst.n; ++i)
    for (int j = 0; j < inst.n; ++j) {
      if (i == j) continue;
      const double w = inst.weight(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw std::invalid_argument("weights must be finite and non-negative");
    }
  if (!std::isfinite(inst.penalty_a))
    throw std::invalid_argument("penalty must be finite");
}

int var_index(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("var_index needs distinct node indices inside [0, n)");
  return i * (n - 1) + j - (j > i ? 1 : 0);
}

std::pair<int, int> var_pair(int n, int q) {
  if (q < 0 || q >= n * (n - 1)) throw std::invalid_argument("variable index out of range");
  const int i = q / (n - 1);
  int j = q % (n - 1);
  if (j >= i) ++j;
  return {i, j};
}

Assignment assignment_from_bits(std::uint64_t z, int m) {
  Assignment x(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) x[q] = static_cast<std::uint8_t>((z >> q) & 1u);
  return x;
}

bool is_feasible(const VrpInstance& inst, const Assignment& x) {
  if (x.size() != static_cast<std::size_t>(inst.var_count()))
    throw std::invalid_argument("assignment length must equal n(n-1)");
  std::vector<int> out(inst.n, 0), in(inst.n, 0);
  for (int q = 0; q < inst.var_count(); ++q) {
    if (!x[q]) continue;
    const auto [i, j] = var_pair(inst.n, q);
    ++out[i];
    ++in[j];
  }
  if (out[0] != inst.k || in[0] != inst.k) return false;
  for (int i = 1; i < inst.n; ++i)
    if (out[i] != 1 || in[i] != 1) return false;
  return true;
}

double route_cost(const VrpInstance& inst, const Assignment& x) {
  if (x.size() != static_cast<std::size_t>(inst.var_count()))
    throw std::invalid_argument("assignment length must equal n(n-1)");
  double cost = 0.0;
  for (int q = 0; q < inst.var_count(); ++q) {
    if (!x[q]) continue;
    const auto [i, j] = var_pair(inst.n, q);
    cost += inst.weight(i, j);
  }
  return cost;
}

VrpInstance parse_instance_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("bad instance JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("k") || !doc.contains("weights"))
    throw std::invalid_argument("instance JSON needs keys n, k, weights");

  VrpInstance inst;
  inst.n = doc.at("n").get<int>();
  inst.k = doc.at("k").get<int>();
  inst.penalty_a = doc.value("penalty_a", 0.0);

  const auto& rows = doc.at("weights");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(inst.n))
    throw std::invalid_argument("weights must be an n x n array of arrays");
  inst.weights.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
  for (int i = 0; i < inst.n; ++i) {
    const auto& row = rows.at(i);
    if (!row.is_array() || row.size() != static_cast<std::size_t>(inst.n))
      throw std::invalid_argument("weights must be an n x n array of arrays");
    for (int j = 0; j < inst.n; ++j)
      if (i != j) inst.weights[static_cast<std::size_t>(i) * inst.n + j] = row.at(j).get<double>();
  }
  validate(inst);
  return inst;
}

VrpInstance load_instance_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

}  // namespace qroute

#include "qroute/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qroute {

double IsingModel::coupling(int a, int b) const {
  if (a == b || a < 0 || b < 0 || a >= m || b >= m)
    throw std::invalid_argument("coupling needs distinct indices inside [0, m)");
  if (a > b) std::swap(a, b);
  return j[static_cast<std::size_t>(a) * m + b];
}

IsingModel qubo_to_ising(const QuboModel& model) {
  const int m = model.m;
  IsingModel ising;
  ising.m = m;
  ising.j.assign(static_cast<std::size_t>(m) * m, 0.0);
  ising.h.assign(static_cast<std::size_t>(m), 0.0);
  ising.d = model.c;

  // x_i = (s_i + 1) / 2 turns Q_ij x_i x_j into Q_ij (s_i s_j + s_i + s_j + 1) / 4
  // and g_i x_i into g_i (s_i + 1) / 2; matching against -J s s - h s + d fixes
  // the signs below.
  for (int i = 0; i < m; ++i) {
    ising.h[i] -= 0.5 * model.g[i];
    ising.d += 0.5 * model.g[i];
    for (int k = i + 1; k < m; ++k) {
      const double quad = model.q[static_cast<std::size_t>(i) * m + k];
      if (quad == 0.0) continue;
      ising.j[static_cast<std::size_t>(i) * m + k] = -0.25 * quad;
      ising.h[i] -= 0.25 * quad;
      ising.h[k] -= 0.25 * quad;
      ising.d += 0.25 * quad;
    }
  }
  return ising;
}

double ising_energy(const IsingModel& model, const Assignment& bits) {
  if (bits.size() != static_cast<std::size_t>(model.m))
    throw std::invalid_argument("assignment length must equal m");
  double e = model.d;
  for (int a = 0; a < model.m; ++a) {
    const double sa = bits[a] ? 1.0 : -1.0;
    e -= model.h[a] * sa;
    for (int b = a + 1; b < model.m; ++b) {
      const double jab = model.j[static_cast<std::size_t>(a) * model.m + b];
      if (jab != 0.0) e -= jab * sa * (bits[b] ? 1.0 : -1.0);
    }
  }
  return e;
}

namespace {

double energy_of_state(const IsingModel& model, std::uint64_t z) {
  return ising_energy(model, assignment_from_bits(z, model.m));
}

}  // namespace

OracleResult brute_force_minimum(const IsingModel& model) {
  if (model.m < 1) throw std::invalid_argument("model needs at least one spin");
  if (model.m > 24) throw std::invalid_argument("exhaustive search refuses m > 24");

  const int m = model.m;
  const std::uint64_t count = 1ull << m;
  // Walk states in Gray-code order so each step flips one spin and the energy
  // updates in O(m); candidates within a loose band of the running minimum are
  // re-evaluated exactly afterwards, which also absorbs accumulated roundoff.
  constexpr double kBand = 1e-9;
  std::vector<double> s(m, -1.0);
  std::uint64_t z = 0;
  double e = energy_of_state(model, 0);
  double best = e;
  std::vector<std::uint64_t> candidates{0};

  for (std::uint64_t t = 1; t < count; ++t) {
    const int b = std::countr_zero(t);
    double row = model.h[b];
    for (int a = 0; a < m; ++a)
      if (a != b) row += model.coupling(a, b) * s[a];
    e += 2.0 * s[b] * row;
    s[b] = -s[b];
    z ^= 1ull << b;
    if ((t & 1023u) == 0u) e = energy_of_state(model, z);

    if (e < best - kBand) {
      best = e;
      candidates.assign(1, z);
    } else if (e <= best + kBand) {
      candidates.push_back(z);
    }
  }

  double min_energy = std::numeric_limits<double>::infinity();
  for (const std::uint64_t c : candidates)
    min_energy = std::min(min_energy, energy_of_state(model, c));

  OracleResult result;
  result.min_energy = min_energy;
  for (const std::uint64_t c : candidates)
    if (energy_of_state(model, c) <= min_energy + 1e-12) result.argmin.push_back(c);
  std::sort(result.argmin.begin(), result.argmin.end());
  result.argmin.erase(std::unique(result.argmin.begin(), result.argmin.end()),
                      result.argmin.end());
  return result;
}

namespace {

std::string format_value(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

std::string export_ising_text(const IsingModel& model) {
  std::ostringstream out;
  for (int a = 0; a < model.m; ++a)
    for (int b = a + 1; b < model.m; ++b) {
      const double jab = model.j[static_cast<std::size_t>(a) * model.m + b];
      if (jab != 0.0) out << "J " << a << ' ' << b << ' ' << format_value(jab) << '\n';
    }
  for (int a = 0; a < model.m; ++a)
    out << "h " << a << ' ' << format_value(model.h[a]) << '\n';
  out << "d " << format_value(model.d) << '\n';
  return out.str();
}

IsingModel parse_ising_text(const std::string& text) {
  struct JTerm { int a, b; double value; };
  std::vector<JTerm> jterms;
  std::vector<std::pair<int, double>> hterms;
  double d = 0.0;
  int max_index = -1;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag) || tag[0] == '#') continue;
    const auto fail = [&] {
      throw std::invalid_argument("bad ising line " + std::to_string(line_no) + ": " + line);
    };
    if (tag == "J") {
      int a, b;
      double value;
      if (!(row >> a >> b >> value) || a == b || a < 0 || b < 0) fail();
      jterms.push_back({std::min(a, b), std::max(a, b), value});
      max_index = std::max({max_index, a, b});
    } else if (tag == "h") {
      int a;
      double value;
      if (!(row >> a >> value) || a < 0) fail();
      hterms.emplace_back(a, value);
      max_index = std::max(max_index, a);
    } else if (tag == "d") {
      double value;
      if (!(row >> value)) fail();
      d += value;
    } else {
      fail();
    }
  }
  if (max_index < 0) throw std::invalid_argument("ising text defines no spins");

  IsingModel model;
  model.m = max_index + 1;
  model.j.assign(static_cast<std::size_t>(model.m) * model.m, 0.0);
  model.h.assign(static_cast<std::size_t>(model.m), 0.0);
  model.d = d;
  for (const auto& term : jterms)
    model.j[static_cast<std::size_t>(term.a) * model.m + term.b] += term.value;
  for (const auto& [a, value] : hterms) model.h[a] += value;
  return model;
}

IsingModel load_ising_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open ising file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ising_text(buf.str());
}

}  // namespace qroute

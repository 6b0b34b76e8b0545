#include "qroute/ansatz.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qroute {

std::string family_name(EncodingFamily family) {
  switch (family) {
    case EncodingFamily::Amplitude: return "amplitude";
    case EncodingFamily::Angle: return "angle";
    case EncodingFamily::HigherOrder: return "higher-order";
    case EncodingFamily::Iqp: return "iqp";
    case EncodingFamily::QaoaCostMixer: return "qaoa";
  }
  throw std::invalid_argument("unknown encoding family");
}

EncodingFamily family_from_name(const std::string& name) {
  if (name == "amplitude") return EncodingFamily::Amplitude;
  if (name == "angle") return EncodingFamily::Angle;
  if (name == "higher-order" || name == "higher_order") return EncodingFamily::HigherOrder;
  if (name == "iqp") return EncodingFamily::Iqp;
  if (name == "qaoa") return EncodingFamily::QaoaCostMixer;
  throw std::invalid_argument("unknown encoding family: " + name);
}

double AngleExpr::value(std::span<const double> params) const {
  double v = scale;
  if (slot_a >= 0) v *= params[slot_a];
  if (slot_b >= 0) v *= params[slot_b];
  return v;
}

std::string AngleExpr::str() const {
  std::ostringstream out;
  bool leading = true;
  if (scale != 1.0 || slot_a < 0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", scale);
    out << buf;
    leading = false;
  }
  if (slot_a >= 0) {
    if (!leading) out << '*';
    out << 'p' << slot_a;
    leading = false;
  }
  if (slot_b >= 0) out << "*p" << slot_b;
  return out.str();
}

std::vector<Gate> CircuitTemplate::bind(std::span<const double> params) const {
  if (params.size() != static_cast<std::size_t>(param_count))
    throw std::invalid_argument("expected " + std::to_string(param_count) +
                                " parameters, got " + std::to_string(params.size()));
  for (const double p : params)
    if (!std::isfinite(p)) throw std::invalid_argument("parameters must be finite");

  std::vector<Gate> gates;
  gates.reserve(this->gates.size());
  for (const GateTemplate& g : this->gates)
    gates.push_back(Gate{g.kind, g.target, g.other, g.angle.value(params), g.ctrl_mask,
                         g.ctrl_value});
  return gates;
}

std::string CircuitTemplate::dump() const {
  std::ostringstream out;
  for (const GateTemplate& g : gates) {
    switch (g.kind) {
      case GateKind::H: out << "h q" << g.target; break;
      case GateKind::X: out << "x q" << g.target; break;
      case GateKind::Rx: out << "rx(" << g.angle.str() << ") q" << g.target; break;
      case GateKind::Ry: out << "ry(" << g.angle.str() << ") q" << g.target; break;
      case GateKind::Rz: out << "rz(" << g.angle.str() << ") q" << g.target; break;
      case GateKind::Phase: out << "phase(" << g.angle.str() << ") q" << g.target; break;
      case GateKind::Cnot: out << "cnot q" << g.other << " q" << g.target; break;
      case GateKind::Rzz:
        out << "rzz(" << g.angle.str() << ") q" << g.target << " q" << g.other;
        break;
      case GateKind::CRy: {
        out << "cry(" << g.angle.str() << ") q" << g.target;
        for (int q = 31; q >= 0; --q)
          if (g.ctrl_mask & (1u << q))
            out << ' ' << ((g.ctrl_value >> q) & 1u ? '+' : '-') << 'q' << q;
        break;
      }
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void check_shape(int n_qubits, int layers) {
  if (n_qubits < 1) throw std::invalid_argument("encoding needs at least one qubit");
  if (layers < 1) throw std::invalid_argument("encoding needs at least one layer");
}

GateTemplate slot_gate(GateKind kind, int target, int slot) {
  GateTemplate g;
  g.kind = kind;
  g.target = target;
  g.angle = AngleExpr{1.0, slot, -1};
  return g;
}

void append_cnot_chain(CircuitTemplate& circuit) {
  for (int q = 0; q + 1 < circuit.n_qubits; ++q) {
    GateTemplate g;
    g.kind = GateKind::Cnot;
    g.target = q + 1;
    g.other = q;
    circuit.gates.push_back(g);
  }
}

}  // namespace

CircuitTemplate build_angle(int n_qubits, int layers) {
  check_shape(n_qubits, layers);
  CircuitTemplate circuit;
  circuit.family = EncodingFamily::Angle;
  circuit.n_qubits = n_qubits;
  circuit.layers = layers;
  circuit.param_count = layers * n_qubits;
  for (int layer = 0; layer < layers; ++layer) {
    const int base = layer * n_qubits;
    for (int q = 0; q < n_qubits; ++q)
      circuit.gates.push_back(slot_gate(GateKind::Ry, q, base + q));
    append_cnot_chain(circuit);
  }
  return circuit;
}

CircuitTemplate build_higher_order(int n_qubits, int layers) {
  CircuitTemplate circuit = build_angle(n_qubits, layers);
  circuit.family = EncodingFamily::HigherOrder;
  circuit.gates.clear();
  for (int layer = 0; layer < layers; ++layer) {
    const int base = layer * n_qubits;
    for (int q = 0; q < n_qubits; ++q)
      circuit.gates.push_back(slot_gate(GateKind::Ry, q, base + q));
    append_cnot_chain(circuit);
    for (int q = 1; q < n_qubits; ++q) {
      GateTemplate g;
      g.kind = GateKind::Ry;
      g.target = q;
      g.angle = AngleExpr{1.0, base + q - 1, base + q};
      circuit.gates.push_back(g);
    }
  }
  return circuit;
}

CircuitTemplate build_iqp(int n_qubits, int layers) {
  check_shape(n_qubits, layers);
  CircuitTemplate circuit;
  circuit.family = EncodingFamily::Iqp;
  circuit.n_qubits = n_qubits;
  circuit.layers = layers;
  circuit.param_count = layers * n_qubits;
  for (int layer = 0; layer < layers; ++layer) {
    const int base = layer * n_qubits;
    for (int q = 0; q < n_qubits; ++q) {
      GateTemplate g;
      g.kind = GateKind::H;
      g.target = q;
      circuit.gates.push_back(g);
    }
    for (int q = 0; q < n_qubits; ++q)
      circuit.gates.push_back(slot_gate(GateKind::Rz, q, base + q));
    for (int q = 0; q + 1 < n_qubits; ++q) {
      GateTemplate g;
      g.kind = GateKind::Rzz;
      g.target = q;
      g.other = q + 1;
      g.angle = AngleExpr{1.0, base + q, base + q + 1};
      circuit.gates.push_back(g);
    }
  }
  return circuit;
}

CircuitTemplate build_amplitude(int n_qubits, bool allow_large) {
  check_shape(n_qubits, 1);
  if (n_qubits > 6 && !allow_large)
    throw std::invalid_argument(
        "amplitude encoding is refused above 6 qubits; pass allow_large to override");
  if (n_qubits > 20) throw std::invalid_argument("amplitude encoding refuses n > 20");

  CircuitTemplate circuit;
  circuit.family = EncodingFamily::Amplitude;
  circuit.n_qubits = n_qubits;
  circuit.layers = 1;
  circuit.param_count = (1 << n_qubits) - 1;
  for (int depth = 0; depth < n_qubits; ++depth) {
    for (int prefix = 0; prefix < (1 << depth); ++prefix) {
      const int slot = (1 << depth) - 1 + prefix;
      if (depth == 0) {
        circuit.gates.push_back(slot_gate(GateKind::Ry, n_qubits - 1, slot));
        continue;
      }
      GateTemplate g;
      g.kind = GateKind::CRy;
      g.target = n_qubits - 1 - depth;
      g.angle = AngleExpr{1.0, slot, -1};
      g.ctrl_mask = static_cast<std::uint32_t>(((1u << depth) - 1u) << (n_qubits - depth));
      for (int t = 0; t < depth; ++t)
        if ((prefix >> (depth - 1 - t)) & 1) g.ctrl_value |= 1u << (n_qubits - 1 - t);
      circuit.gates.push_back(g);
    }
  }
  return circuit;
}

CircuitTemplate build_qaoa(const IsingModel& model, int layers) {
  check_shape(model.m, layers);
  CircuitTemplate circuit;
  circuit.family = EncodingFamily::QaoaCostMixer;
  circuit.n_qubits = model.m;
  circuit.layers = layers;
  circuit.param_count = 2 * layers;
  for (int q = 0; q < model.m; ++q) {
    GateTemplate g;
    g.kind = GateKind::H;
    g.target = q;
    circuit.gates.push_back(g);
  }
  for (int layer = 0; layer < layers; ++layer) {
    const int gamma = 2 * layer, beta = 2 * layer + 1;
    for (int a = 0; a < model.m; ++a)
      for (int b = a + 1; b < model.m; ++b) {
        const double jab = model.coupling(a, b);
        if (jab == 0.0) continue;
        GateTemplate g;
        g.kind = GateKind::Rzz;
        g.target = a;
        g.other = b;
        g.angle = AngleExpr{2.0 * jab, gamma, -1};
        circuit.gates.push_back(g);
      }
    for (int a = 0; a < model.m; ++a) {
      if (model.h[a] == 0.0) continue;
      GateTemplate g;
      g.kind = GateKind::Rz;
      g.target = a;
      g.angle = AngleExpr{2.0 * model.h[a], gamma, -1};
      circuit.gates.push_back(g);
    }
    for (int q = 0; q < model.m; ++q) {
      GateTemplate g;
      g.kind = GateKind::Rx;
      g.target = q;
      g.angle = AngleExpr{2.0, beta, -1};
      circuit.gates.push_back(g);
    }
  }
  return circuit;
}

CircuitTemplate build_encoding(EncodingFamily family, int n_qubits, int layers,
                               const IsingModel* model, bool allow_large_amplitude) {
  switch (family) {
    case EncodingFamily::Amplitude: return build_amplitude(n_qubits, allow_large_amplitude);
    case EncodingFamily::Angle: return build_angle(n_qubits, layers);
    case EncodingFamily::HigherOrder: return build_higher_order(n_qubits, layers);
    case EncodingFamily::Iqp: return build_iqp(n_qubits, layers);
    case EncodingFamily::QaoaCostMixer:
      if (model == nullptr)
        throw std::invalid_argument("qaoa construction needs the compiled model");
      if (model->m != n_qubits)
        throw std::invalid_argument("qaoa register size must match the model");
      return build_qaoa(*model, layers);
  }
  throw std::invalid_argument("unknown encoding family");
}

int param_count(EncodingFamily family, int n_qubits, int layers) {
  check_shape(n_qubits, layers);
  switch (family) {
    case EncodingFamily::Amplitude:
      if (n_qubits > 20) throw std::invalid_argument("amplitude encoding refuses n > 20");
      return (1 << n_qubits) - 1;
    case EncodingFamily::Angle:
    case EncodingFamily::HigherOrder:
    case EncodingFamily::Iqp:
      return layers * n_qubits;
    case EncodingFamily::QaoaCostMixer:
      return 2 * layers;
  }
  throw std::invalid_argument("unknown encoding family");
}

std::vector<double> amplitude_angles(std::span<const double> target) {
  const std::size_t dim = target.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("target length must be a power of two, at least 2");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;

  std::vector<double> angles((std::size_t{1} << n) - 1, 0.0);
  for (int depth = 0; depth < n; ++depth) {
    const std::size_t block = std::size_t{1} << (n - depth);
    for (std::size_t prefix = 0; prefix < (std::size_t{1} << depth); ++prefix) {
      const std::size_t lo = prefix * block;
      const std::size_t slot = (std::size_t{1} << depth) - 1 + prefix;
      if (depth == n - 1) {
        // Leaf split: the signed pair fixes the angle, so sign information
        // survives even though interior splits only see magnitudes.
        angles[slot] = 2.0 * std::atan2(target[lo + 1], target[lo]);
        continue;
      }
      double left = 0.0, right = 0.0;
      for (std::size_t i = 0; i < block / 2; ++i) {
        left += target[lo + i] * target[lo + i];
        right += target[lo + block / 2 + i] * target[lo + block / 2 + i];
      }
      angles[slot] = 2.0 * std::atan2(std::sqrt(right), std::sqrt(left));
    }
  }
  return angles;
}

}  // namespace qroute

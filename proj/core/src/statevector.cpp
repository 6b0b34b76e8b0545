#include "qroute/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qroute {

namespace {

constexpr int kMaxQubits = 20;

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("qubit index out of range");
}

void check_angle(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("gate angle must be finite");
}

}  // namespace

Gate make_h(int q) { return Gate{GateKind::H, q, -1, 0.0, 0, 0}; }
Gate make_x(int q) { return Gate{GateKind::X, q, -1, 0.0, 0, 0}; }
Gate make_rx(double theta, int q) { return Gate{GateKind::Rx, q, -1, theta, 0, 0}; }
Gate make_ry(double theta, int q) { return Gate{GateKind::Ry, q, -1, theta, 0, 0}; }
Gate make_rz(double theta, int q) { return Gate{GateKind::Rz, q, -1, theta, 0, 0}; }
Gate make_phase(double lambda, int q) { return Gate{GateKind::Phase, q, -1, lambda, 0, 0}; }
Gate make_cnot(int control, int target) {
  return Gate{GateKind::Cnot, target, control, 0.0, 0, 0};
}
Gate make_rzz(double theta, int a, int b) { return Gate{GateKind::Rzz, a, b, theta, 0, 0}; }
Gate make_cry(double theta, int target, std::uint32_t ctrl_mask, std::uint32_t ctrl_value) {
  return Gate{GateKind::CRy, target, -1, theta, ctrl_mask, ctrl_value};
}

Gate inverse(const Gate& gate) {
  Gate inv = gate;
  switch (gate.kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Cnot:
      break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Phase:
    case GateKind::Rzz:
    case GateKind::CRy:
      inv.angle = -gate.angle;
      break;
  }
  return inv;
}

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("register size must lie in [1, 20]");
  amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  amps_[0] = cdouble{1.0, 0.0};
}

Statevector Statevector::from_amplitudes(std::vector<cdouble> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim))
    throw std::invalid_argument("amplitude count must be a power of two, at least 2");
  Statevector state(std::bit_width(dim) - 1);
  state.amps_ = std::move(amplitudes);
  return state;
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const cdouble& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

cdouble Statevector::inner(const Statevector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("register sizes differ");
  cdouble sum{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) sum += std::conj(amps_[i]) * other.amps_[i];
  return sum;
}

namespace {

void apply_2x2(std::vector<cdouble>& amps, int q, cdouble u00, cdouble u01, cdouble u10,
               cdouble u11) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps.size(); base += bit << 1)
    for (std::size_t off = 0; off < bit; ++off) {
      cdouble& a0 = amps[base + off];
      cdouble& a1 = amps[base + off + bit];
      const cdouble t0 = u00 * a0 + u01 * a1;
      const cdouble t1 = u10 * a0 + u11 * a1;
      a0 = t0;
      a1 = t1;
    }
}

}  // namespace

void Statevector::apply(const Gate& gate) {
  check_qubit(gate.target, n_);
  switch (gate.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      apply_2x2(amps_, gate.target, {r, 0}, {r, 0}, {r, 0}, {-r, 0});
      break;
    }
    case GateKind::X:
      apply_2x2(amps_, gate.target, {0, 0}, {1, 0}, {1, 0}, {0, 0});
      break;
    case GateKind::Rx: {
      check_angle(gate.angle);
      const double c = std::cos(0.5 * gate.angle), s = std::sin(0.5 * gate.angle);
      apply_2x2(amps_, gate.target, {c, 0}, {0, -s}, {0, -s}, {c, 0});
      break;
    }
    case GateKind::Ry: {
      check_angle(gate.angle);
      const double c = std::cos(0.5 * gate.angle), s = std::sin(0.5 * gate.angle);
      apply_2x2(amps_, gate.target, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
      break;
    }
    case GateKind::Rz: {
      check_angle(gate.angle);
      const cdouble lo = std::polar(1.0, -0.5 * gate.angle);
      const cdouble hi = std::polar(1.0, 0.5 * gate.angle);
      apply_2x2(amps_, gate.target, lo, {0, 0}, {0, 0}, hi);
      break;
    }
    case GateKind::Phase: {
      check_angle(gate.angle);
      apply_2x2(amps_, gate.target, {1, 0}, {0, 0}, {0, 0}, std::polar(1.0, gate.angle));
      break;
    }
    case GateKind::Cnot: {
      check_qubit(gate.other, n_);
      if (gate.other == gate.target)
        throw std::invalid_argument("cnot control and target must differ");
      const std::size_t cbit = std::size_t{1} << gate.other;
      const std::size_t tbit = std::size_t{1} << gate.target;
      for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      break;
    }
    case GateKind::Rzz: {
      check_angle(gate.angle);
      check_qubit(gate.other, n_);
      if (gate.other == gate.target)
        throw std::invalid_argument("rzz qubits must differ");
      const cdouble same = std::polar(1.0, -0.5 * gate.angle);
      const cdouble diff = std::polar(1.0, 0.5 * gate.angle);
      const std::size_t abit = std::size_t{1} << gate.target;
      const std::size_t bbit = std::size_t{1} << gate.other;
      for (std::size_t i = 0; i < amps_.size(); ++i)
        amps_[i] *= (((i & abit) != 0) == ((i & bbit) != 0)) ? same : diff;
      break;
    }
    case GateKind::CRy: {
      check_angle(gate.angle);
      const std::size_t tbit = std::size_t{1} << gate.target;
      if (gate.ctrl_mask & tbit)
        throw std::invalid_argument("controls must not include the target");
      if (gate.ctrl_value & ~gate.ctrl_mask)
        throw std::invalid_argument("control values must lie inside the control mask");
      if (gate.ctrl_mask >> n_)
        throw std::invalid_argument("control qubit index out of range");
      const double c = std::cos(0.5 * gate.angle), s = std::sin(0.5 * gate.angle);
      const std::size_t mask = gate.ctrl_mask;
      const std::size_t value = gate.ctrl_value;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & tbit) || (i & mask) != value) continue;
        cdouble& a0 = amps_[i];
        cdouble& a1 = amps_[i | tbit];
        const cdouble t0 = c * a0 - s * a1;
        const cdouble t1 = s * a0 + c * a1;
        a0 = t0;
        a1 = t1;
      }
      break;
    }
  }
}

void Statevector::apply(const std::vector<Gate>& gates) {
  for (const Gate& gate : gates) apply(gate);
}

std::uint64_t argmax_bitstring(const Statevector& state) {
  std::uint64_t best = 0;
  double best_p = state.probability(0);
  for (std::size_t z = 1; z < state.dim(); ++z) {
    const double p = state.probability(z);
    if (p > best_p) {
      best_p = p;
      best = z;
    }
  }
  return best;
}

double DiagonalObservable::energy_at(std::uint64_t z) const {
  return ising_energy(*model_, assignment_from_bits(z, model_->m));
}

double expectation(const Statevector& state, const DiagonalObservable& obs) {
  const IsingModel& model = obs.model();
  const int m = model.m;
  if (state.dim() != (std::size_t{1} << m))
    throw std::invalid_argument("observable size does not match the register");

  std::vector<double> s(m, -1.0);
  std::uint64_t z = 0;
  double e = obs.energy_at(0);
  double acc = state.probability(0) * e;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t t = 1; t < count; ++t) {
    const int b = std::countr_zero(t);
    double row = model.h[b];
    for (int a = 0; a < m; ++a)
      if (a != b) row += model.coupling(a, b) * s[a];
    e += 2.0 * s[b] * row;
    s[b] = -s[b];
    z ^= std::uint64_t{1} << b;
    if ((t & 1023u) == 0u) e = obs.energy_at(z);
    acc += state.probability(z) * e;
  }
  return acc;
}

double overlap_probability(const std::vector<Gate>& circuit_a,
                           const std::vector<Gate>& circuit_b, int n_qubits) {
  Statevector state(n_qubits);
  state.apply(circuit_b);
  for (auto it = circuit_a.rbegin(); it != circuit_a.rend(); ++it) state.apply(inverse(*it));
  return state.probability(0);
}

}  // namespace qroute

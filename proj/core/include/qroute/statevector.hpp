#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qroute/ising.hpp"

namespace qroute {

using cdouble = std::complex<double>;

/// Rotation conventions: RX/RY/RZ(theta) = exp(-i * theta / 2 * {X, Y, Z}),
/// RZZ(theta) = exp(-i * theta / 2 * Z (x) Z), Phase(lambda) = diag(1, e^{i lambda}).
enum class GateKind { H, X, Rx, Ry, Rz, Phase, Cnot, Rzz, CRy };

/// Qubit 0 is the least significant bit of the basis-state index.
struct Gate {
  GateKind kind = GateKind::H;
  int target = 0;               ///< acted-on qubit (first qubit for Rzz)
  int other = -1;               ///< Cnot control, or second Rzz qubit
  double angle = 0.0;           ///< radians; unused by H, X, Cnot
  std::uint32_t ctrl_mask = 0;  ///< CRy: control qubits as a bitmask
  std::uint32_t ctrl_value = 0; ///< CRy: required control bits, subset of ctrl_mask
};

Gate make_h(int q);
Gate make_x(int q);
Gate make_rx(double theta, int q);
Gate make_ry(double theta, int q);
Gate make_rz(double theta, int q);
Gate make_phase(double lambda, int q);
Gate make_cnot(int control, int target);
Gate make_rzz(double theta, int a, int b);
Gate make_cry(double theta, int target, std::uint32_t ctrl_mask, std::uint32_t ctrl_value);

/// The gate with the opposite action: self-inverse kinds unchanged, rotation
/// kinds with the angle negated.
Gate inverse(const Gate& gate);

/// Dense state of an n-qubit register, 2^n complex amplitudes.
class Statevector {
 public:
  /// Initializes |0...0>.  Refuses registers above 20 qubits.
  explicit Statevector(int n_qubits);

  /// Wraps an explicit amplitude vector; the length must be a power of two.
  static Statevector from_amplitudes(std::vector<cdouble> amplitudes);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  cdouble amplitude(std::size_t z) const { return amps_[z]; }
  double probability(std::size_t z) const { return std::norm(amps_[z]); }
  double norm() const;

  void apply(const Gate& gate);
  void apply(const std::vector<Gate>& gates);

  /// Inner product <this|other>.
  cdouble inner(const Statevector& other) const;

 private:
  int n_ = 0;
  std::vector<cdouble> amps_;
};

/// Basis index of maximal probability; exact ties resolve to the lowest index.
std::uint64_t argmax_bitstring(const Statevector& state);

/// Diagonal observable whose value at basis state z is the Ising energy of
/// the bits of z.  Holds a reference; the model must outlive the observable.
class DiagonalObservable {
 public:
  explicit DiagonalObservable(const IsingModel& model) : model_(&model) {}
  int num_qubits() const { return model_->m; }
  double energy_at(std::uint64_t z) const;
  const IsingModel& model() const { return *model_; }

 private:
  const IsingModel* model_;
};

/// sum_z |psi_z|^2 * E(z), evaluated with an incremental Gray-code walk so a
/// full pass costs O(2^m * m) instead of O(2^m * m^2).
double expectation(const Statevector& state, const DiagonalObservable& obs);

/// Transition probability |<0| U_a^dagger U_b |0>|^2, computed by running
/// circuit b forward and circuit a inverted on one register.
double overlap_probability(const std::vector<Gate>& circuit_a,
                           const std::vector<Gate>& circuit_b, int n_qubits);

}  // namespace qroute

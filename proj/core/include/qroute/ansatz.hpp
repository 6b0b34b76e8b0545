#pragma once

#include <span>
#include <string>
#include <vector>

#include "qroute/statevector.hpp"

namespace qroute {

enum class EncodingFamily { Amplitude, Angle, HigherOrder, Iqp, QaoaCostMixer };

/// Lowercase names used by the CLI and report files: "amplitude", "angle",
/// "higher-order", "iqp", "qaoa".
std::string family_name(EncodingFamily family);
EncodingFamily family_from_name(const std::string& name);

/// Angle of a templated gate as a function of the bound parameter vector:
/// scale * p[slot_a] * p[slot_b], where a negative slot contributes 1.
struct AngleExpr {
  double scale = 1.0;
  int slot_a = -1;
  int slot_b = -1;

  double value(std::span<const double> params) const;
  std::string str() const;
};

struct GateTemplate {
  GateKind kind = GateKind::H;
  int target = 0;
  int other = -1;
  std::uint32_t ctrl_mask = 0;
  std::uint32_t ctrl_value = 0;
  AngleExpr angle;
};

/// A parameterized circuit: a fixed gate list whose angles are expressions
/// over a parameter vector of length param_count.
struct CircuitTemplate {
  EncodingFamily family = EncodingFamily::Angle;
  int n_qubits = 0;
  int layers = 1;
  int param_count = 0;
  std::vector<GateTemplate> gates;

  /// Produces concrete gates; throws std::invalid_argument on a length
  /// mismatch or any non-finite parameter.
  std::vector<Gate> bind(std::span<const double> params) const;

  /// Human-readable listing, one gate per line.
  std::string dump() const;
};

/// Per layer: RY(p) on every qubit, then a CNOT chain (q -> q+1).
CircuitTemplate build_angle(int n_qubits, int layers);

/// Angle layer plus RY(p_{i-1} * p_i) on qubit i for i = 1..n-1; the product
/// rotations reuse the layer's parameters rather than introducing new ones.
CircuitTemplate build_higher_order(int n_qubits, int layers);

/// Per repetition: H on every qubit, RZ(p_k) on every qubit, then
/// RZZ(p_i * p_{i+1}) on each chain pair (i, i+1).
CircuitTemplate build_iqp(int n_qubits, int layers);

/// Binary-tree state preparation: RY on the top qubit, then multiply
/// controlled RY rotations conditioned on every previously prepared qubit.
/// 2^n - 1 parameters regardless of the layers setting.  Registers above
/// 6 qubits are refused unless allow_large is set.
CircuitTemplate build_amplitude(int n_qubits, bool allow_large = false);

/// H on every qubit, then per layer p: RZZ(2 * gamma_p * J_ij) on each coupled
/// pair, RZ(2 * gamma_p * h_i) on each qubit, RX(2 * beta_p) on each qubit.
/// Parameters are ordered (gamma_1, beta_1, gamma_2, beta_2, ...).
CircuitTemplate build_qaoa(const IsingModel& model, int layers);

CircuitTemplate build_encoding(EncodingFamily family, int n_qubits, int layers,
                               const IsingModel* model = nullptr,
                               bool allow_large_amplitude = false);

/// Angle / HigherOrder / Iqp: layers * n_qubits.  Amplitude: 2^n - 1.
/// QaoaCostMixer: 2 * layers.
int param_count(EncodingFamily family, int n_qubits, int layers);

/// Tree angles that make build_amplitude reproduce the given real amplitude
/// vector (length 2^n, normalized); each split angle is
/// 2 * atan2(||upper half||, ||lower half||).
std::vector<double> amplitude_angles(std::span<const double> target);

}  // namespace qroute

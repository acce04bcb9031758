#pragma once

// Circuit intermediate representation: gates, cycles, cycle/segment
// unitaries, structural validation, and the built-in circuit factories.
// Channel-level simulation lives in circuit.hpp.

#include <array>
#include <string>
#include <vector>

#include "noiselab/common.hpp"
#include "noiselab/linalg.hpp"

namespace noiselab {

enum class GateKind { H, S, T, X, Y, Z, RX, RY, RZ, CNOT, CZ, SWAP };

const char* gate_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);  // ParseError
int gate_arity(GateKind k);
bool gate_is_clifford(GateKind k);
bool gate_takes_angle(GateKind k);

struct Gate {
  GateKind kind;
  std::array<int, 2> qubits{-1, -1};
  double angle = 0.0;  // RX/RY/RZ only

  int arity() const { return gate_arity(kind); }

  static Gate h(int q) { return {GateKind::H, {q, -1}}; }
  static Gate s(int q) { return {GateKind::S, {q, -1}}; }
  static Gate t(int q) { return {GateKind::T, {q, -1}}; }
  static Gate x(int q) { return {GateKind::X, {q, -1}}; }
  static Gate y(int q) { return {GateKind::Y, {q, -1}}; }
  static Gate z(int q) { return {GateKind::Z, {q, -1}}; }
  static Gate rx(int q, double a) { return {GateKind::RX, {q, -1}, a}; }
  static Gate ry(int q, double a) { return {GateKind::RY, {q, -1}, a}; }
  static Gate rz(int q, double a) { return {GateKind::RZ, {q, -1}, a}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, {c, t}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}}; }
};

// Gate matrix on its own qubits (2- or 4-dim; qubits[0] is the more
// significant index bit).
Mat gate_matrix(const Gate& g);

struct Circuit {
  int n = 0;
  std::vector<std::vector<Gate>> cycles;

  int T() const { return int(cycles.size()); }
  bool all_clifford() const;
};

ValidationReport validate(const Circuit& c);

// Unitary of cycle t (1-based); empty cycle gives the identity.
Mat cycle_unitary(const Circuit& c, int t);

// U_{s,t}: ordered product of cycles s+1..t (s = t gives identity).
Mat segment_unitary(const Circuit& c, int s, int t);

// Built-in factories.
Circuit bell_circuit();
Circuit ghz_circuit(int n);
Circuit product_rx_circuit(int n, double theta);

}  // namespace noiselab

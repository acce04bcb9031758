#pragma once

// Density-matrix circuit execution, ideal and noisy, with per-cycle noise
// schedules and the accumulated noisy superoperator that overall-error
// extraction needs.

#include <optional>
#include <vector>

#include "noiselab/channel.hpp"
#include "noiselab/circuit_ir.hpp"
#include "noiselab/state.hpp"

namespace noiselab {

// Where noise acts within one cycle. The paper-level definition does not fix
// an order; this is the one switch that does.
enum class NoiseOrder {
  GatesThenGateNoiseThenStorage,  // default
  GatesThenStorageThenGateNoise,
};

struct GateNoise {
  int cycle = -1;           // 1-based; -1 = unattached fragment
  std::vector<int> qubits;  // the gate's qubits
  QuantumChannel channel;   // acts on exactly these qubits
};

// Schedule entry applying `e` on the gate's qubits, identity elsewhere.
GateNoise gate_noise(const Gate& g, const QuantumChannel& e);

struct NoiseSchedule {
  std::vector<std::optional<QuantumChannel>> storage;  // index t-1 for cycle t
  std::vector<GateNoise> gate_noise;
  NoiseOrder order = NoiseOrder::GatesThenGateNoiseThenStorage;

  static NoiseSchedule none(int T) { return {std::vector<std::optional<QuantumChannel>>(T), {}, NoiseOrder::GatesThenGateNoiseThenStorage}; }
  static NoiseSchedule uniform_storage(int T, const QuantumChannel& e);
};

struct Trajectory {
  std::vector<DensityMatrix> snapshots;  // snapshots[t] = state after cycle t
  std::optional<Mat> noisy_superop;      // accumulated when n <= superop cap
};

Trajectory simulate_ideal(const Circuit& c, const DensityMatrix& rho0);
Trajectory simulate_noisy(const Circuit& c, const DensityMatrix& rho0, const NoiseSchedule& ns);

// E_overall = S_noisy ∘ Ad(U_{0,T})^{-1}: accumulated noise in the frame of
// the final intended state. MissingSuperop if the trajectory has none.
QuantumChannel overall_error_channel(const Trajectory& traj, const Circuit& c);

}  // namespace noiselab

#pragma once

// State-dependent noise constructions: the preparation-conjugated envelope
// (the noise follows the circuit that prepared the state) and conditioned
// near-identity Haar-generated unitary channels calibrated to a target
// expected qubit-error count.

#include <functional>
#include <optional>

#include "noiselab/circuit.hpp"
#include "noiselab/syndrome.hpp"

namespace noiselab {

// A preparation unitary, optionally tagged with the Clifford circuit that
// realizes it (enabling the exact Pauli pushforward on conjugation).
struct PrepUnitary {
  Mat matrix;
  std::optional<Circuit> clifford;

  static PrepUnitary from_matrix(const Mat& u);
  static PrepUnitary from_circuit(const Circuit& c);  // dense cap applies
};

// A set-valued noise model D(rho): for each way of reaching rho from rho0 via
// a preparation unitary U, the envelope contains U E0 U^{-1}. The generator
// evaluates the representative channel for an explicit U.
struct NoiseEnvelope {
  QuantumChannel base;  // E0
  DensityMatrix rho0;
  std::function<QuantumChannel(const DensityMatrix&, const PrepUnitary&)> generator;
};

NoiseEnvelope memory_example_envelope(const DensityMatrix& rho0, const QuantumChannel& e0);

// Unitary channel Ad_U with U = exp(i theta H), H a traceless Gaussian
// Hermitian draw, theta calibrated by bisection so the expected qubit-error
// count alpha(Ad_U) lands within 2% of target_alpha.
QuantumChannel conditioned_haar_channel(int n, double target_alpha,
                                        uint64_t seed);  // CalibrationFailed

// Expected qubit errors of a channel (alpha of its weight profile).
double expected_qubit_errors(const QuantumChannel& e);

}  // namespace noiselab

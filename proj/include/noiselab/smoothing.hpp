#pragma once

// Time-smoothing of per-cycle noise: positive kernels over elapsed fractions
// of the run, the forward (detrimental) transformer that mixes past noise
// conjugated to the present frame, and the reverse smoothing that mixes
// future noise without conjugation.

#include <vector>

#include "noiselab/circuit.hpp"

namespace noiselab {

struct KernelSpec {
  enum class Kind { Uniform, ExpDecay, Window } kind = Kind::Uniform;
  double tau = 1.0;  // ExpDecay: K(u) = exp(-u / tau), tau > 0
  double w = 1.0;    // Window:   K(u) = 1 iff u <= w, 0 < w <= 1

  static KernelSpec uniform() { return {}; }
  static KernelSpec exp_decay(double tau);
  static KernelSpec window(double w);

  // K(u) for u >= 0 (elapsed fraction of the run).
  double eval(double u) const;
};

// Normalized weights w_s over s = 1..t with w_s proportional to K((t-s)/T).
std::vector<double> kernel_weights(const KernelSpec& k, int t, int T);  // BadRange

// Per-cycle noise channels E_1..E_T together with the smoothed derivation
// E'_t = sum_{s<=t} w_s U_{s,t} E_s U_{s,t}^{-1}.
struct DetrimentalSchedule {
  Circuit circuit;
  std::vector<QuantumChannel> base;     // E_t at index t-1
  KernelSpec kernel;
  std::vector<QuantumChannel> derived;  // E'_t at index t-1
};

// Builds the full derived schedule. Uses the exact Pauli pushforward when the
// circuit is Clifford and the base noise is a Pauli mixture; otherwise the
// dense unitary-conjugation path (n within the superoperator cap).
DetrimentalSchedule detrimental_transform(const Circuit& c,
                                          const std::vector<QuantumChannel>& base,
                                          const KernelSpec& k);  // CapExceeded

// E''_t = sum_{s>t} w'_s E_s with w'_s proportional to K((s-t)/T); future
// noise mixed without conjugation. Requires t < T.
QuantumChannel reverse_smoothing(const std::vector<QuantumChannel>& base, const KernelSpec& k,
                                 int t);  // BadRange

// Storage-noise schedules for simulate_noisy: the derived E'_t per cycle, and
// the reverse-smoothed counterpart. The reverse schedule has no future noise
// to average at t = T; that slot falls back to the base channel E_T.
NoiseSchedule detrimental_schedule(const DetrimentalSchedule& ds);
NoiseSchedule reverse_schedule(const std::vector<QuantumChannel>& base, const KernelSpec& k);

}  // namespace noiselab

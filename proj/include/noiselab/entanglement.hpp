#pragma once

// Entanglement functionals: von Neumann entropy, negativity, trace distance
// to the separable set (witness lower bound + search upper bound), the
// max-entropy marginal completion and the derived ENT measure, the summed
// ENT-tilde over subsets, and emergent entanglement of a qubit pair under
// optimized separable measurement of the rest. All entropies are in bits.

#include <cstdint>
#include <map>
#include <vector>

#include "noiselab/state.hpp"

namespace noiselab {

// Entropy in bits (implicitly convertible for arithmetic).
struct EntropyValue {
  double value = 0.0;
  operator double() const { return value; }
};

EntropyValue von_neumann_entropy(const DensityMatrix& rho);

// Sum of |negative eigenvalues| of the partial transpose over part B.
double negativity(const DensityMatrix& rho, const std::vector<int>& b);

// Trace distance from rho to the separable set across the A|B bipartition:
// lower = negativity / 2^min(|A|,|B|) (a PPT witness bound), upper = best
// separable mixture found by seeded random-restart coordinate search over
// mixtures of at most 16 product pure states.
struct SepDistanceEstimate {
  double lower = 0.0;
  double upper = 0.0;
  bool budget_exhausted = false;
  int evals = 0;
};

SepDistanceEstimate sep_distance_estimate(const DensityMatrix& rho, const std::vector<int>& a,
                                          const std::vector<int>& b, int budget,
                                          uint64_t seed);  // BadRange, BadIndex

// Maximize S(rho*) subject to rho* matching every (n-1)-qubit marginal of
// rho: alternating projection onto the affine constraint set and the PSD
// cone, then projected entropy ascent. residual = max over constrained
// subsets of the trace-norm marginal mismatch.
struct MaxEntSolution {
  DensityMatrix rho_star;
  EntropyValue entropy;
  double constraint_residual = 0.0;
  int iterations = 0;
};

MaxEntSolution max_entropy_completion(const DensityMatrix& rho);  // CapExceeded, NoConvergence

// ENT(rho) = -S(rho) + S(rho*) with rho* the max-entropy completion.
double ent_measure(const DensityMatrix& rho);

// Sum of ENT over all qubit subsets B with |B| >= 2 (the full set included),
// each evaluated on the reduced state rho|_B.
struct EntReport {
  double ent = 0.0;                             // ENT of the full set
  std::map<std::vector<int>, double> per_subset;
  double ent_tilde = 0.0;
};

EntReport ent_tilde(const DensityMatrix& rho);  // CapExceeded

// Two-qubit concurrence (analytic spin-flip formula) and the entanglement of
// formation it determines, in ebits.
double concurrence(const DensityMatrix& rho);              // DimensionMismatch
double entanglement_of_formation(const DensityMatrix& rho);

// Best expected post-measurement entanglement of formation between qubits i
// and j when every other qubit is measured in an optimized local projective
// basis (two angles per qubit). Seeded random restarts + coordinate descent;
// the value is a lower bound to the true maximum and is monotone
// nondecreasing in budget for a fixed seed.
struct EmergentResult {
  double value = 0.0;
  bool budget_exhausted = false;
  int evals = 0;
};

EmergentResult emergent_entanglement(const DensityMatrix& rho, int i, int j, int budget,
                                     uint64_t seed);  // CapExceeded, BadIndex

}  // namespace noiselab

#pragma once

// Executable experiments probing the synchronization propositions and the
// entanglement-correlation conjectures: random-unitary synchronization
// statistics, two-qubit / partition correlation propositions (verification
// and falsification search), entanglement-vs-correlation scans, rate
// comparisons between independent and correlated noise of equal strength,
// noise scaling over circuit families, evolution noncommutativity, the
// D-noise commutation score, envelope covariance checks, and the forward vs
// reverse smoothing comparison. Probes of open conjectures report measured
// quantities only; proved propositions get pass/fail.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noiselab/entanglement.hpp"
#include "noiselab/noise_models.hpp"
#include "noiselab/smoothing.hpp"
#include "noiselab/syndrome.hpp"

namespace noiselab {

// --- Random-unitary synchronization (near-identity Haar channels) ----------

struct SyncExperimentReport {
  int n = 0;
  int trials = 0;
  double target_alpha = 0.0;
  // Per trial: conditional weight fraction sum_s s f~(s) / n with
  // f~(s) = f(s) / (1 - f(0)), and total variation of f~ to Binomial(n, 3/4).
  std::vector<double> per_trial_fraction;
  std::vector<double> per_trial_tv;
  double mean_weight_fraction = 0.0;
  double mean_tv_to_binomial = 0.0;
  // Trial-mean of the conditional profile f~(s), indexed s = 0..n (entry 0
  // is identically 0 by construction).
  std::vector<double> mean_conditional_profile;
  bool degenerate_single_qubit = false;  // n == 1: fraction is identically 1
  bool vanishing_noise = false;          // some trial had 1 - f(0) ~ 0
};

SyncExperimentReport run_random_unitary_sync(int n, double target_alpha, int trials,
                                             uint64_t seed);  // CapExceeded, BadRange

// --- Correlation propositions ----------------------------------------------

// Verification record for the two-qubit and partition correlation claims.
// "Hypotheses" cover the parameter preconditions (eta < 1/20, s > 4 eta) and
// the distribution-level requirements; the conclusion compares the exact
// fault-count tail P(sum_i x_i > s n / 2) against the bound s * eta / 4.
struct PropositionReport {
  bool hypotheses_satisfied = false;
  bool conclusion_satisfied = false;
  double eta = 0.0;
  double s = 0.0;
  double min_marginal = 0.0;
  double min_pair_correlation = 0.0;
  double tail_probability = 0.0;
  double bound = 0.0;
  // Partition variant only:
  double expected_partition_correlation = 0.0;
  double partition_std_error = 0.0;
  bool eta_hat_substituted = false;  // eta taken as min_i p_i (flagged decision)
  std::string note;
};

PropositionReport verify_cor2q(const CoarseDistribution& cd, double eta, double s);

// Partition variant: estimates E[cor_{X,Y}] over `partitions` uniformly
// random balanced bipartitions; when the estimate reaches s, evaluates the
// same tail bound with eta-hat = min_i p_i (substitution always flagged).
PropositionReport verify_corpart(const CoarseDistribution& cd, int partitions, double s,
                                 uint64_t seed);  // BadRange

// Falsification search over coarse-distribution families.
enum class Cor2qFamily {
  MixtureOfProductAndSync,  // lambda * sync(q) + (1 - lambda) * product(p_i)
  ProductOnly,              // lambda = 0 slice (no hypothesis-satisfying members)
  SyncOnly,                 // lambda = 1 slice (all satisfy, closed-form tail)
  RandomSparse,             // random sparse mask tables
};

struct SearchCounterexample {
  int trial = -1;
  int n = 0;
  double lambda = 0.0, q = 0.0;
  std::vector<double> p;
  double tail_probability = 0.0;
  double bound = 0.0;
};

struct SearchReport {
  int sampled = 0;
  int hypotheses_satisfied = 0;
  int conclusion_failures = 0;
  std::optional<SearchCounterexample> counterexample;  // lowest trial index
};

SearchReport search_cor2q(Cor2qFamily family, int n, int trials, double eta, double s,
                          uint64_t seed);  // CapExceeded, BadRange

// --- Entanglement-correlation conjecture probes -----------------------------

// Row ratio = cor / (min(r_i, r_j)^2 * S): the conjectured bound has shape
// cor >= K(r_i, r_j) * S with K(x, y) / min(x, y)^2 >> 1, so the raw ratio
// lets any candidate K be assessed afterwards. Block rows scale by
// min(|X|, |Y|): ratio = cor * min(|X|,|Y|) / (min(r_X, r_Y)^2 * S).
struct ConjAPairRow {
  int i = 0, j = 0;
  double entanglement = 0.0;  // S(rho_i) of the ideal final state (bits)
  double r_i = 0.0, r_j = 0.0;
  double cor = 0.0;
  double ratio = 0.0;
  bool distance_entanglement = false;  // mixed global state: separable-distance proxy
};

struct ConjABlockRow {
  std::vector<int> x, y;
  double entanglement = 0.0;  // S(rho|_X)
  double r_x = 0.0, r_y = 0.0;
  double cor = 0.0;
  double ratio = 0.0;
};

struct ConjAReport {
  std::vector<ConjAPairRow> pairs;
  std::vector<ConjABlockRow> blocks;
  int excluded_rows = 0;  // zero entanglement or degenerate marginals
};

ConjAReport conjecture_a_scan(
    const Circuit& c, const DensityMatrix& rho0, const QuantumChannel& noise,
    const std::vector<std::pair<int, int>>& pairs,
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& blocks = {});

struct ConjBReport {
  double mean_partition_entropy = 0.0;  // mean S(rho|_X), random balanced X
  int partitions = 0;
  SyncClassification sync;
  DecayReport decay;
};

ConjBReport conjecture_b_metric(const Circuit& c, const DensityMatrix& rho0,
                                const QuantumChannel& noise, double delta, int partitions,
                                uint64_t seed);

// --- Rate comparisons and scaling -------------------------------------------

struct RateReport {
  int n = 0;
  double p = 0.0;
  double alpha_independent = 0.0;
  double alpha_correlated = 0.0;   // equals alpha_independent within 1e-10
  double rate_independent = 0.0;   // channel_error_rate estimates
  double rate_correlated = 0.0;
  double ratio = 0.0;              // independent / correlated
};

RateReport rate_comparison(int n, double p, const RateStrategy& strategy);  // CapExceeded

enum class CircuitFamily { Ghz, Empty };

struct ScalingRow {
  int n = 0;
  double alpha = 0.0;  // alpha of the final derived channel E'_T
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double slope = 0.0;      // least-squares alpha vs n
  double intercept = 0.0;
};

// Single-qubit depolarizing base noise dep(p) on qubit 0, each cycle, run
// through the detrimental pipeline of the family circuit at each size.
ScalingReport rate_scaling_experiment(CircuitFamily family, const KernelSpec& k, double p,
                                      int n_min, int n_max);  // CapExceeded, BadRange

// --- Evolution noncommutativity and D-noise ---------------------------------

// mu(t) = 2^{-n/2} * ||U_{t,T} U_{0,t} - U_{0,t} U_{t,T}||_F in [0, 2];
// t = T gives 0 (empty future commutes).
double noncommutativity(const Circuit& c, int t);  // BadRange, CapExceeded

struct DnoiseResult {
  double score = 0.0;  // min over admissible V of ||Ad_V o E - E o Ad_V||_F
  bool budget_exhausted = false;
  int evals = 0;
};

// Minimizes the superoperator commutator norm over V = exp(iH) with
// [H, rho] = 0 (H block-Hermitian in rho's eigenspaces), H traceless and
// ||H||_F = 1 (excluding the trivial global-phase stabilizer). Score ~ 0
// certifies a nontrivial rho-stabilizing symmetry of the channel.
DnoiseResult dnoise_score(const QuantumChannel& e, const DensityMatrix& rho, int budget,
                          uint64_t seed);  // CapExceeded, BadRange, DimensionMismatch

// --- Envelope covariance and smoothing comparison ---------------------------

struct InvarianceReport {
  double deviation = 0.0;  // superoperator distance between the two sides
  bool pass = false;       // deviation <= 1e-10
};

// Checks generator(W rho W^dag, W U) == Ad_W generator(rho, U) Ad_W^{-1}.
InvarianceReport invariance_check(const NoiseEnvelope& env, const DensityMatrix& rho0,
                                  const PrepUnitary& u, const Mat& w);  // DimensionMismatch

struct SmoothingComparison {
  std::vector<double> per_cycle;  // trace distance after each cycle, t = 1..T
  double final_distance = 0.0;
};

// Runs the noisy simulation under the forward (detrimental) schedule and the
// reverse-smoothed schedule and reports trajectory trace distances.
SmoothingComparison smoothing_comparison(const Circuit& c,
                                         const std::vector<QuantumChannel>& base,
                                         const KernelSpec& k, const DensityMatrix& rho0);

}  // namespace noiselab

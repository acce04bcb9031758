#pragma once

// Error-syndrome statistics of quantum channels: exact Pauli-mass (chi-
// diagonal) distributions, weight profiles f(s) and the expected qubit-error
// count alpha, coarse fault-pattern distributions, pair/block correlations of
// fault indicators, synchronization classification, tail-decay envelopes,
// pairwise-independence checks, and seeded Monte Carlo sampling.

#include <cstdint>
#include <string>
#include <vector>

#include "noiselab/channel.hpp"

namespace noiselab {

// Exact distribution of Pauli error syndromes: mass(P) = sum_k |Tr(P A_k)|^2
// / 4^n for any Kraus set {A_k} of the channel (representation independent).
struct SyndromeDistribution {
  PauliMixture masses;

  int n() const { return masses.n(); }
  double total() const { return masses.total(); }
};

// f[s] = total mass at Pauli weight s; alpha = sum_s s f[s].
struct WeightProfile {
  std::vector<double> f;  // length n + 1
  double alpha = 0.0;

  int n() const { return int(f.size()) - 1; }
  double tail(int s) const;  // f(>= s); s > n gives 0, s <= 0 gives the total
};

// Distribution of the coarse syndrome: which qubits carry a non-identity
// fault. Index bit (n-1-k) marks qubit k, matching basis-state bit order.
struct CoarseDistribution {
  int n = 0;
  std::vector<double> probs;  // size 2^n
  bool sampled = false;
  std::size_t sample_size = 0;  // > 0 iff sampled
};

SyndromeDistribution pauli_mass(const QuantumChannel& e);  // CapExceeded
WeightProfile weight_profile(const SyndromeDistribution& d);

// Marginal fault mass of qubit k: sum of masses of strings non-identity at k.
double qubit_error_amount(const SyndromeDistribution& d, int k);  // BadIndex

CoarseDistribution coarse_distribution(const SyndromeDistribution& d);

// P(qubit i faulty); block version is the mean over the set (r_X).
double fault_probability(const CoarseDistribution& cd, int i);  // BadIndex
double block_fault_probability(const CoarseDistribution& cd, const std::vector<int>& X);

// Pearson correlation of the fault indicators, with the covariance kept as a
// secondary field. A marginal of exactly 0 or 1 makes Pearson undefined; the
// record is then flagged degenerate and carries the covariance only.
struct CorrelationRecord {
  double pearson = 0.0;
  double covariance = 0.0;
  bool degenerate = false;
};

CorrelationRecord pair_correlation(const CoarseDistribution& cd, int i, int j);

// Correlation of the "any fault in X" / "any fault in Y" indicators, plus the
// mean pairwise correlation over X x Y as an alternative scalarization.
struct BlockCorrelationRecord {
  CorrelationRecord any_fault;
  double mean_pairwise = 0.0;
};

BlockCorrelationRecord block_correlation(const CoarseDistribution& cd,
                                         const std::vector<int>& X,
                                         const std::vector<int>& Y);

// Operationalization of "f(>=s) is substantial for some s >> alpha":
// synchronized iff some integer s >= max(s_over_alpha * alpha, s_floor) has
// f(>=s) * s >= substantial * alpha; very strong synchronization evaluates
// the same substantiality at s = (3/4 - delta) n.
struct SyncThresholds {
  double substantial = 0.01;
  double s_over_alpha = 10.0;
  int s_floor = 3;
};

struct SyncClassification {
  std::vector<double> tail;  // tail[s] = f(>= s), s = 0..n
  double alpha = 0.0;
  bool synchronized = false;
  bool very_strong = false;
  int sync_witness_s = -1;  // smallest witnessing s when synchronized
  double delta = 0.0;
  double very_strong_s = 0.0;  // the (3/4 - delta) n threshold used
};

SyncClassification synchronization_report(const WeightProfile& wp, double delta,
                                          const SyncThresholds& th = {});

// Exponential-decay check of the weight-profile tail above alpha: anchors a
// log-linear envelope at s0 = ceil(alpha + margin * n) and passes iff every
// later tail point lies below it with per-step decay rate >= min_rate (nats).
struct DecayReport {
  bool pass = false;
  bool trivial = false;  // tail empty at/after the anchor
  double rate = 0.0;     // worst-case per-step decay rate found
  int s_start = 0;
  std::string note;
};

DecayReport tail_decay_check(const WeightProfile& wp, double margin, double min_rate = 1.0);

// Fraction of qubit pairs whose fault indicators are within tau of
// uncorrelated; passes iff the fraction is at least 1 - tau.
struct IndependenceReport {
  double fraction = 0.0;
  bool pass = false;
  int pairs_checked = 0;
  int worst_i = -1, worst_j = -1;
  double worst_correlation = 0.0;
};

IndependenceReport pairwise_independence_check(const CoarseDistribution& cd, double tau);

// m i.i.d. coarse draws from the syndrome distribution (seeded, determinism
// independent of thread count since sampling is sequential per call).
CoarseDistribution sample_syndromes(const SyndromeDistribution& d, std::size_t m, uint64_t seed);

}  // namespace noiselab

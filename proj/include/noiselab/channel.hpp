#pragma once

// Quantum channels: Kraus representation with a lazily cached superoperator,
// an optional exact chi-diagonal (Pauli mixture) representation for the
// sparse fast path, CPTP validation, composition/conjugation/mixing, the
// depolarizing factories, and trace-distance rate estimation.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "noiselab/pauli.hpp"
#include "noiselab/rng.hpp"
#include "noiselab/state.hpp"

namespace noiselab {

class QuantumChannel {
 public:
  QuantumChannel() : cell_(std::make_shared<SuperopCell>()) {}
  QuantumChannel(int n, std::vector<Mat> kraus)
      : n_(n), kraus_(std::move(kraus)), cell_(std::make_shared<SuperopCell>()) {}

  // A channel that is exactly a probabilistic mixture of Pauli conjugations;
  // dense Kraus are materialized only when they fit the caps.
  static QuantumChannel from_pauli_mixture(PauliMixture pm);

  int n() const { return n_; }
  bool has_kraus() const { return !kraus_.empty(); }
  const std::vector<Mat>& kraus() const;  // MissingSuperop-like guard
  const std::optional<PauliMixture>& pauli_rep() const { return pauli_rep_; }
  void set_pauli_rep(PauliMixture pm) { pauli_rep_ = std::move(pm); }
  void drop_pauli_rep() { pauli_rep_.reset(); }

  // Column-stacking superoperator sum_k conj(A_k) (x) A_k, cached behind a
  // single-assignment latch. CapExceeded beyond the superop cap.
  const Mat& superop() const;

 private:
  struct SuperopCell {
    std::once_flag once;
    Mat value;
  };
  int n_ = 0;
  std::vector<Mat> kraus_;
  std::optional<PauliMixture> pauli_rep_;
  std::shared_ptr<SuperopCell> cell_;
};

struct CptpReport {
  double tp_residual = 0.0;   // spectral norm of sum A†A - I
  double min_choi_eig = 0.0;  // most negative Choi eigenvalue (>= 0 if PSD)
  bool ok = false;
};

QuantumChannel identity_channel(int n);
QuantumChannel unitary_channel(const Mat& u);

DensityMatrix apply(const QuantumChannel& e, const DensityMatrix& rho);
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
QuantumChannel conjugate_by_unitary(const QuantumChannel& e, const Mat& u);
QuantumChannel mix(const std::vector<QuantumChannel>& channels,
                   const std::vector<double>& weights);
CptpReport validate_cptp(const QuantumChannel& e);

Mat choi_matrix(const QuantumChannel& e);  // sum_k vec(A_k) vec(A_k)†
std::vector<Mat> kraus_from_choi(const Mat& choi, int n, double drop_tol = tol::kraus_drop);
QuantumChannel canonical_kraus(const QuantumChannel& e);  // Choi re-extraction

// Superoperator <-> Choi reshuffle (column-stacking convention).
Mat superop_to_choi(const Mat& s, int n);
Mat choi_to_superop(const Mat& c, int n);

double superop_distance(const QuantumChannel& a, const QuantumChannel& b);  // Frobenius

// Independent per-qubit depolarizing on `support` (default: all qubits).
QuantumChannel depolarizing(int n, double p);
QuantumChannel depolarizing(int n, double p, const std::vector<int>& support);
// rho -> (1-p) rho + p * tau_{1..n}: all qubits replaced together.
QuantumChannel correlated_depolarizing(int n, double p);

// Extend a k-qubit channel to n qubits (identity elsewhere).
QuantumChannel extend_channel(const QuantumChannel& e, int n, const std::vector<int>& qubits);

// Haar-flavored random CPTP channel: Ginibre Kraus draws A_k = G_k S^{-1/2}
// with S = sum G†G, which makes sum A†A = I exactly (up to roundoff).
QuantumChannel random_channel(int n, int kraus_count, Rng& rng);

// Conjugate by a Clifford circuit: pushes the chi-diagonal forward exactly
// (fast path) and conjugates dense Kraus when available.
QuantumChannel conjugate_by_clifford(const QuantumChannel& e, const Circuit& c);

struct RateStrategy {
  enum class Kind { BasisStates, RandomPure, Refine } kind = Kind::BasisStates;
  int samples = 32;       // RandomPure/Refine
  int refine_steps = 200;  // Refine
  uint64_t seed = 1;
  static RateStrategy basis() { return {}; }
  static RateStrategy random_pure(int m, uint64_t seed = 1) {
    return {Kind::RandomPure, m, 200, seed};
  }
  static RateStrategy refine(int m = 32, uint64_t seed = 1) { return {Kind::Refine, m, 200, seed}; }
};

// Certified lower bound on sup_rho D(rho, E(rho)); monotone in strategy
// strength (basis ≤ random-pure ≤ refine).
double channel_error_rate(const QuantumChannel& e, const RateStrategy& strategy);

}  // namespace noiselab

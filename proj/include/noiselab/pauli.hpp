#pragma once

// Pauli-string algebra on bit-packed x/z words: weights, coarse syndromes,
// dense realization, phase-exact multiplication, and symplectic Clifford
// conjugation (the >=10-qubit fast path and the brute-force oracle's
// vocabulary). Qubit k lives at bit (n-1-k) of both words, so qubit 0 is the
// leftmost tensor factor and the packed words sort like the textual string.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "noiselab/circuit_ir.hpp"
#include "noiselab/common.hpp"

namespace noiselab {

struct PauliString {
  int n = 0;
  uint32_t x = 0, z = 0;

  auto operator<=>(const PauliString&) const = default;

  bool x_at(int k) const { return (x >> (n - 1 - k)) & 1u; }
  bool z_at(int k) const { return (z >> (n - 1 - k)) & 1u; }

  // Flat index into the dense 4^n syndrome array.
  uint64_t flat() const { return (uint64_t(x) << n) | z; }

  static PauliString identity(int n) { return {n, 0, 0}; }
  static PauliString from_bits(int n, uint32_t x, uint32_t z);
  static PauliString from_flat(int n, uint64_t flat);
  static PauliString single(int n, int k, char letter);  // 'I','X','Y','Z'
  static PauliString parse(std::string_view text);       // "XIZ"

  std::string str() const;
};

struct SignedPauli {
  PauliString p;
  int phase_exp = 0;  // phase = i^phase_exp, 0..3
  cplx phase() const;
  int sign() const;  // +1/-1; requires a real phase
};

int weight(const PauliString& p);
uint32_t coarse(const PauliString& p);  // bit (n-1-k) = 1 iff letter k != I
std::string coarse_string(const PauliString& p);

Mat pauli_matrix(const PauliString& p);  // CapExceeded beyond dense cap

SignedPauli multiply(const PauliString& a, const PauliString& b);

// U p U† for a Clifford circuit, gate by gate (NotClifford otherwise).
SignedPauli clifford_conjugate(const PauliString& p, const Circuit& c);
SignedPauli clifford_conjugate(const SignedPauli& p, const Gate& g);

// Nonnegative masses on Pauli strings (flat-indexed). Doubles as a channel's
// exact chi-diagonal representation and as the syndrome distribution payload.
// Sparse (ordered map) while the support is small, dense above that.
class PauliMixture {
 public:
  static constexpr std::size_t kSparseLimit = std::size_t(1) << 16;

  static PauliMixture zero(int n) { return PauliMixture(n); }

  explicit PauliMixture(int n = 0) : n_(n) {}

  int n() const { return n_; }
  bool dense() const { return !dense_.empty(); }

  void add(uint64_t flat, double mass);
  void add(const PauliString& p, double mass) { add(p.flat(), mass); }
  double at(uint64_t flat) const;
  double total() const;
  std::size_t support_size() const;
  void make_dense();

  // Deterministic iteration in ascending flat order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    if (!dense_.empty()) {
      for (uint64_t i = 0; i < dense_.size(); ++i)
        if (dense_[i] != 0.0) fn(i, dense_[i]);
    } else {
      for (const auto& [idx, m] : sparse_)
        if (m != 0.0) fn(idx, m);
    }
  }

 private:
  int n_;
  std::map<uint64_t, double> sparse_;
  std::vector<double> dense_;
  void spill_if_needed();
};

// Expansion coefficients of a 2^n-dim matrix in the Pauli basis:
// M = sum_P c_P P with c_P = Tr(P M) / 2^n, flat-indexed, computed by the
// per-qubit butterfly in O(n 4^n).
std::vector<cplx> pauli_coefficients(const Mat& m, int n);

}  // namespace noiselab

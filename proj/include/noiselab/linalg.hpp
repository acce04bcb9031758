#pragma once

// Free-function linear algebra layer over Eigen: Kronecker products, the
// column-stacking vec/unvec pair, qubit-index bit plumbing, partial
// trace/transpose, and Hermitian matrix functions. Everything here accepts
// Eigen expressions and returns plain dense matrices.

#include <cmath>
#include <functional>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "noiselab/common.hpp"

namespace noiselab {

template <class DA, class DB>
Mat kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived());
}

// Column-stacking vectorization: vec(M)[c*rows + r] = M(r, c).
template <class D>
Vec vec(const Eigen::MatrixBase<D>& m) {
  Mat t = m.derived();
  return Eigen::Map<const Vec>(t.data(), t.size());
}

inline Mat unvec(const Vec& v, Eigen::Index rows) {
  return Eigen::Map<const Mat>(v.data(), rows, v.size() / rows);
}

// Qubit k of an n-qubit register lives at bit (n-1-k) of a basis index:
// qubit 0 is the leftmost tensor factor.
inline int qubit_bitpos(int n, int k) { return n - 1 - k; }

inline uint64_t qubit_bit(int n, int k) { return uint64_t(1) << qubit_bitpos(n, k); }

inline int bit_at(uint64_t index, int n, int k) {
  return int((index >> qubit_bitpos(n, k)) & 1);
}

// Partial trace keeping `keep` (strictly increasing qubit list, original order).
inline Mat partial_trace(const Mat& rho, int n, const std::vector<int>& keep) {
  const int k = int(keep.size());
  require(k > 0, ErrorKind::EmptySet, "partial_trace: empty keep set");
  for (int q : keep) require(q >= 0 && q < n, ErrorKind::BadIndex, "partial_trace: qubit out of range");
  const Eigen::Index d = dim_of(n), dk = dim_of(k);
  uint64_t keep_mask = 0;
  for (int q : keep) keep_mask |= qubit_bit(n, q);
  auto project = [&](uint64_t full) {
    uint64_t out = 0;
    for (int j = 0; j < k; ++j)
      out |= uint64_t(bit_at(full, n, keep[j])) << (k - 1 - j);
    return out;
  };
  Mat out = Mat::Zero(dk, dk);
  for (Eigen::Index r = 0; r < d; ++r) {
    const uint64_t er = uint64_t(r) & ~keep_mask;
    const uint64_t kr = project(uint64_t(r));
    for (Eigen::Index c = 0; c < d; ++c) {
      if ((uint64_t(c) & ~keep_mask) != er) continue;
      out(kr, project(uint64_t(c))) += rho(r, c);
    }
  }
  return out;
}

// Partial transpose over the qubits in `part`.
inline Mat partial_transpose(const Mat& rho, int n, const std::vector<int>& part) {
  uint64_t mask = 0;
  for (int q : part) {
    require(q >= 0 && q < n, ErrorKind::BadIndex, "partial_transpose: qubit out of range");
    mask |= qubit_bit(n, q);
  }
  const Eigen::Index d = dim_of(n);
  Mat out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      const uint64_t rr = (uint64_t(r) & ~mask) | (uint64_t(c) & mask);
      const uint64_t cc = (uint64_t(c) & ~mask) | (uint64_t(r) & mask);
      out(rr, cc) = rho(r, c);
    }
  return out;
}

// Extend a 2^k-dim operator acting on `qubits` (operator bit j of the gate
// index = qubits[j], qubits[0] most significant) to the full n-qubit space.
inline Mat embed_operator(const Mat& op, int n, const std::vector<int>& qubits) {
  const int k = int(qubits.size());
  require(op.rows() == dim_of(k) && op.cols() == dim_of(k), ErrorKind::DimensionMismatch,
          "embed_operator: operator dim does not match qubit count");
  for (int q : qubits) require(q >= 0 && q < n, ErrorKind::BadIndex, "embed_operator: qubit out of range");
  const Eigen::Index d = dim_of(n), dk = dim_of(k);
  uint64_t mask = 0;
  for (int q : qubits) mask |= qubit_bit(n, q);
  auto place = [&](uint64_t sub) {
    uint64_t out = 0;
    for (int j = 0; j < k; ++j)
      if ((sub >> (k - 1 - j)) & 1) out |= qubit_bit(n, qubits[j]);
    return out;
  };
  auto extract = [&](uint64_t full) {
    uint64_t out = 0;
    for (int j = 0; j < k; ++j)
      out |= uint64_t(bit_at(full, n, qubits[j])) << (k - 1 - j);
    return out;
  };
  Mat out = Mat::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const uint64_t rest = uint64_t(c) & ~mask;
    const uint64_t gc = extract(uint64_t(c));
    for (Eigen::Index gr = 0; gr < dk; ++gr) {
      const cplx v = op(gr, gc);
      if (v != cplx(0.0)) out(rest | place(uint64_t(gr)), c) = v;
    }
  }
  return out;
}

struct Eigh {
  RVec values;  // ascending
  Mat vectors;  // columns
};

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

inline Eigh eigh(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h));
  return {es.eigenvalues(), es.eigenvectors()};
}

inline Mat hermitian_function(const Mat& h, const std::function<double(double)>& f) {
  Eigh e = eigh(h);
  RVec fv(e.values.size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv[i] = f(e.values[i]);
  return e.vectors * fv.asDiagonal().toDenseMatrix().cast<cplx>() * e.vectors.adjoint();
}

// exp(i*theta*H) for Hermitian H.
inline Mat unitary_exp(const Mat& h, double theta) {
  Eigh e = eigh(h);
  Vec phases(e.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(cplx(0.0, theta * e.values[i]));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

inline double spectral_norm_hermitian(const Mat& h) {
  Eigh e = eigh(h);
  double m = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) m = std::max(m, std::abs(e.values[i]));
  return m;
}

inline double trace_norm_hermitian(const Mat& h) {
  Eigh e = eigh(h);
  double s = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) s += std::abs(e.values[i]);
  return s;
}

inline double min_eig_hermitian(const Mat& h) {
  Eigh e = eigh(h);
  return e.values.minCoeff();
}

}  // namespace noiselab

// Independent reference implementations used only by tests.  Everything here
// is written the slow, obvious way (dense matrices, explicit traces) so that
// the optimized library code can be checked against it.
#pragma once

#include <noiselab/channel.hpp>
#include <noiselab/circuit.hpp>
#include <noiselab/linalg.hpp>
#include <noiselab/pauli.hpp>

#include <cmath>
#include <map>
#include <vector>

namespace oracle {

using noiselab::Mat;
using noiselab::Vec;
using noiselab::cplx;

// Mass of one Pauli string in a channel, computed from Kraus operators via
// explicit traces: q_P = sum_k |Tr(P A_k)|^2 / 4^n.
inline double pauli_mass(const std::vector<Mat>& kraus, const noiselab::PauliString& p) {
  const Mat pm = noiselab::pauli_matrix(p);
  const double dim2 = std::pow(4.0, p.n);
  double mass = 0.0;
  for (const Mat& a : kraus) {
    const cplx tr = (pm * a).trace();
    mass += std::norm(tr) / dim2;
  }
  return mass;
}

// Full syndrome distribution of a channel from its Kraus operators, as a map
// from flat Pauli index to mass.
inline std::map<uint64_t, double> pauli_masses(const std::vector<Mat>& kraus, int n) {
  std::map<uint64_t, double> out;
  const uint64_t count = uint64_t(1) << (2 * n);
  for (uint64_t f = 0; f < count; ++f) {
    const auto p = noiselab::PauliString::from_flat(n, f);
    const double m = pauli_mass(kraus, p);
    if (m > 1e-14) out[f] = m;
  }
  return out;
}

// Dense conjugation oracle: computes U P U^dag and matches it against
// +/- i^k Q over all Pauli strings Q.  Returns the signed result.
inline noiselab::SignedPauli conjugate_dense(const noiselab::PauliString& p, const Mat& u) {
  const Mat target = u * noiselab::pauli_matrix(p) * u.adjoint();
  const int n = p.n;
  const uint64_t count = uint64_t(1) << (2 * n);
  for (uint64_t f = 0; f < count; ++f) {
    const auto q = noiselab::PauliString::from_flat(n, f);
    const Mat qm = noiselab::pauli_matrix(q);
    for (int e = 0; e < 4; ++e) {
      const cplx phase = std::pow(cplx(0, 1), e);
      if ((target - phase * qm).cwiseAbs().maxCoeff() < 1e-9)
        return noiselab::SignedPauli{q, e};
    }
  }
  throw std::runtime_error("conjugate_dense: image is not a signed Pauli string");
}

// Exact binomial pmf via logs (stable for moderate n).
inline double binom_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_c + k * std::log(p) + (n - k) * std::log1p(-p));
}

// Channel application the pedestrian way: rho' = sum_k A_k rho A_k^dag.
inline Mat apply_kraus(const std::vector<Mat>& kraus, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& a : kraus) out += a * rho * a.adjoint();
  return out;
}

// Superoperator built column by column from basis matrices E_ij, with
// column-stacking convention vec(M)[c*d + r] = M(r, c).
inline Mat superop_by_columns(const std::vector<Mat>& kraus, int dim) {
  Mat s = Mat::Zero(dim * dim, dim * dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      Mat e = Mat::Zero(dim, dim);
      e(r, c) = 1.0;
      const Mat img = apply_kraus(kraus, e);
      for (int cc = 0; cc < dim; ++cc)
        for (int rr = 0; rr < dim; ++rr)
          s(cc * dim + rr, c * dim + r) = img(rr, cc);
    }
  }
  return s;
}

}  // namespace oracle

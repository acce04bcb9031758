#include "noiselab/noise_models.hpp"

#include <cmath>

namespace noiselab {

PrepUnitary PrepUnitary::from_matrix(const Mat& u) {
  const auto d = u.rows();
  require(d == u.cols() && d >= 2 && (d & (d - 1)) == 0, ErrorKind::DimensionMismatch,
          "PrepUnitary: matrix must be square with power-of-two dimension");
  return PrepUnitary{u, std::nullopt};
}

PrepUnitary PrepUnitary::from_circuit(const Circuit& c) {
  PrepUnitary pu;
  pu.matrix = segment_unitary(c, 0, c.T());
  if (c.all_clifford()) pu.clifford = c;
  return pu;
}

NoiseEnvelope memory_example_envelope(const DensityMatrix& rho0, const QuantumChannel& e0) {
  require(rho0.n == e0.n(), ErrorKind::DimensionMismatch,
          "memory_example_envelope: state and channel sizes differ");
  NoiseEnvelope env;
  env.base = e0;
  env.rho0 = rho0;
  env.generator = [e0](const DensityMatrix& rho, const PrepUnitary& u) -> QuantumChannel {
    require(u.matrix.rows() == dim_of(rho.n), ErrorKind::DimensionMismatch,
            "noise envelope: preparation unitary dimension mismatch");
    if (u.clifford && e0.pauli_rep()) return conjugate_by_clifford(e0, *u.clifford);
    return conjugate_by_unitary(e0, u.matrix);
  };
  return env;
}

double expected_qubit_errors(const QuantumChannel& e) {
  return weight_profile(pauli_mass(e)).alpha;
}

QuantumChannel conditioned_haar_channel(int n, double target_alpha, uint64_t seed) {
  require(n >= 1 && n <= 8, ErrorKind::BadRange, "conditioned_haar_channel: need 1 <= n <= 8");
  require(target_alpha > 0.0 && target_alpha < 0.75 * n, ErrorKind::BadRange,
          "conditioned_haar_channel: need 0 < target_alpha < 3n/4");

  Rng rng(derive_seed(seed, "conditioned-haar", 0));
  Mat h = gue_traceless(dim_of(n), rng);
  h /= h.norm();  // fixed scale so calibrated thetas are comparable across draws

  // U(theta) from one eigendecomposition of H.
  const Eigh eh = eigh(h);
  auto unitary_at = [&](double theta) {
    Vec phases(eh.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
      phases[i] = std::exp(cplx(0.0, theta * eh.values[i]));
    return Mat(eh.vectors * phases.asDiagonal() * eh.vectors.adjoint());
  };
  auto alpha_at = [&](double theta) {
    return expected_qubit_errors(unitary_channel(unitary_at(theta)));
  };

  // Bracket: alpha(0) = 0; grow theta until alpha crosses the target.
  double lo = 0.0, hi = 1.0;
  double alpha_hi = alpha_at(hi);
  int grow = 0;
  while (alpha_hi < target_alpha && grow++ < 60) {
    lo = hi;
    hi *= 2.0;
    alpha_hi = alpha_at(hi);
  }
  require(alpha_hi >= target_alpha, ErrorKind::CalibrationFailed,
          "conditioned_haar_channel: could not bracket the target alpha");

  const double tol_rel = 0.02;
  double theta = hi, alpha = alpha_hi;
  for (int it = 0; it < 200; ++it) {
    theta = 0.5 * (lo + hi);
    alpha = alpha_at(theta);
    if (std::abs(alpha - target_alpha) <= tol_rel * target_alpha) {
      QuantumChannel e = unitary_channel(unitary_at(theta));
      return e;
    }
    (alpha < target_alpha ? lo : hi) = theta;
  }
  fail(ErrorKind::CalibrationFailed,
       "conditioned_haar_channel: bisection did not reach 2% of the target");
}

}  // namespace noiselab

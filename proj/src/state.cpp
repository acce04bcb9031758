#include "noiselab/state.hpp"

namespace noiselab {

ValidationReport validate_state(const DensityMatrix& rho) {
  ValidationReport rep;
  const Eigen::Index d = dim_of(rho.n);
  if (rho.m.rows() != d || rho.m.cols() != d) {
    rep.flag("matrix dimension does not match qubit count");
    return rep;
  }
  if ((rho.m - rho.m.adjoint()).cwiseAbs().maxCoeff() > tol::herm)
    rep.flag("not Hermitian within tolerance");
  if (std::abs(rho.m.trace() - cplx(1.0)) > tol::trace) rep.flag("trace differs from 1");
  if (min_eig_hermitian(rho.m) < tol::psd) rep.flag("negative eigenvalue beyond tolerance");
  return rep;
}

DensityMatrix make_state(int n, Mat m) {
  DensityMatrix rho{n, std::move(m)};
  ValidationReport rep = validate_state(rho);
  require(rep.ok, ErrorKind::ValidationError,
          "make_state: " + (rep.problems.empty() ? std::string("invalid") : rep.problems.front()));
  return rho;
}

DensityMatrix basis_state(int n, uint64_t bits) {
  const Eigen::Index d = dim_of(n);
  require(bits < uint64_t(d), ErrorKind::BadIndex, "basis_state: bit pattern out of range");
  Mat m = Mat::Zero(d, d);
  m(Eigen::Index(bits), Eigen::Index(bits)) = 1.0;
  return {n, std::move(m)};
}

DensityMatrix zero_state(int n) { return basis_state(n, 0); }

DensityMatrix pure_state(const Vec& psi) {
  const Eigen::Index d = psi.size();
  require(d > 0 && (d & (d - 1)) == 0, ErrorKind::DimensionMismatch,
          "pure_state: dimension is not a power of two");
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  const double norm = psi.norm();
  require(norm > 0, ErrorKind::ValidationError, "pure_state: zero vector");
  Vec v = psi / norm;
  return {n, v * v.adjoint()};
}

DensityMatrix ghz_state(int n) {
  const Eigen::Index d = dim_of(n);
  Vec psi = Vec::Zero(d);
  psi(0) = psi(d - 1) = 1.0 / std::sqrt(2.0);
  return pure_state(psi);
}

DensityMatrix bell_state() { return ghz_state(2); }

DensityMatrix completely_mixed(int n) {
  const Eigen::Index d = dim_of(n);
  return {n, Mat::Identity(d, d) / double(d)};
}

DensityMatrix random_pure_state(int n, Rng& rng) {
  Vec psi(dim_of(n));
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = rng.cnormal();
  return pure_state(psi);
}

double purity(const DensityMatrix& rho) { return (rho.m * rho.m).trace().real(); }

DensityMatrix reduced_state(const DensityMatrix& rho, const std::vector<int>& Z) {
  return {int(Z.size()), partial_trace(rho.m, rho.n, Z)};
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.n == sigma.n, ErrorKind::DimensionMismatch, "trace_distance: qubit counts differ");
  return 0.5 * trace_norm_hermitian(rho.m - sigma.m);
}

}  // namespace noiselab

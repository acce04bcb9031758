#include "noiselab/rng.hpp"

#include <cmath>

namespace noiselab {

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) return 0;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = sm_.next();
  } while (v >= limit);
  return v % bound;
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * M_PI * u2;
  cached_ = r * std::sin(th);
  have_cached_ = true;
  return r * std::cos(th);
}

Mat ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.cnormal();
  return m;
}

Mat haar_unitary(Eigen::Index d, Rng& rng) {
  Mat g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  Vec phases(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const cplx rii = r(i, i);
    phases[i] = (std::abs(rii) > 0) ? rii / std::abs(rii) : cplx(1.0);
  }
  return q * phases.asDiagonal();
}

Mat gue(Eigen::Index d, Rng& rng) {
  Mat h(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    h(i, i) = cplx(rng.normal(), 0.0);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const cplx v = rng.cnormal();
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

Mat gue_traceless(Eigen::Index d, Rng& rng) {
  Mat h = gue(d, rng);
  h -= (h.trace() / double(d)) * Mat::Identity(d, d);
  return h;
}

}  // namespace noiselab

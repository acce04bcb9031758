#include "noiselab/entanglement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <future>

#include "noiselab/rng.hpp"

namespace noiselab {

namespace {

double entropy_bits(const RVec& eigs) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double l = eigs[i];
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return std::max(0.0, s);
}

double binary_entropy_bits(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace

EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  return {entropy_bits(eigh(rho.m).values)};
}

double negativity(const DensityMatrix& rho, const std::vector<int>& b) {
  const Eigh e = eigh(partial_transpose(rho.m, rho.n, b));
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values[i] < 0.0) s -= e.values[i];
  return s;
}

// ---------------------------------------------------------------------------
// Separable-distance estimate
// ---------------------------------------------------------------------------

namespace {

// Full-register vector of the product state fa (on qubits a, in list order) x
// fb (on qubits b).
Vec product_vector(int n, const std::vector<int>& a, const std::vector<int>& b, const Vec& fa,
                   const Vec& fb) {
  const Eigen::Index d = dim_of(n);
  Vec v(d);
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    uint64_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      ia = (ia << 1) | uint64_t(bit_at(uint64_t(idx), n, a[k]));
    for (std::size_t k = 0; k < b.size(); ++k)
      ib = (ib << 1) | uint64_t(bit_at(uint64_t(idx), n, b[k]));
    v[idx] = fa[Eigen::Index(ia)] * fb[Eigen::Index(ib)];
  }
  return v;
}

struct SepCandidate {
  std::vector<double> w;  // nonnegative, renormalized on evaluation
  std::vector<Vec> fa, fb;
};

Vec normalized_or_basis(Vec v) {
  const double nrm = v.norm();
  if (nrm < 1e-12) {
    v.setZero();
    v[0] = 1.0;
    return v;
  }
  return v / nrm;
}

Vec random_pure_vector(Eigen::Index d, Rng& rng) {
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = cplx(rng.normal(), rng.normal());
  return normalized_or_basis(std::move(v));
}

// Closest product state to a full-register vector: leading singular pair of
// the (a-index) x (b-index) reshaping.
void product_projection(const Vec& psi, int n, const std::vector<int>& a,
                        const std::vector<int>& b, Vec& fa, Vec& fb) {
  const Eigen::Index da = dim_of(int(a.size())), db = dim_of(int(b.size()));
  Mat m = Mat::Zero(da, db);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    uint64_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      ia = (ia << 1) | uint64_t(bit_at(uint64_t(idx), n, a[k]));
    for (std::size_t k = 0; k < b.size(); ++k)
      ib = (ib << 1) | uint64_t(bit_at(uint64_t(idx), n, b[k]));
    m(Eigen::Index(ia), Eigen::Index(ib)) = psi[idx];
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  fa = normalized_or_basis(svd.matrixU().col(0));
  fb = normalized_or_basis(svd.matrixV().col(0).conjugate());
}

struct SepSearchResult {
  double upper = 1.0;
  int evals = 0;
  bool exhausted = false;
};

SepSearchResult sep_search_restart(const DensityMatrix& rho, const std::vector<int>& a,
                                   const std::vector<int>& b, int budget, uint64_t seed,
                                   int variant) {
  const int n = rho.n;
  const Eigen::Index d = dim_of(n);
  const Eigen::Index da = dim_of(int(a.size())), db = dim_of(int(b.size()));
  constexpr int kTerms = 16;
  Rng rng(seed);

  SepCandidate cand;
  cand.w.assign(kTerms, 1.0 / kTerms);
  for (int t = 0; t < kTerms; ++t) {
    cand.fa.push_back(random_pure_vector(da, rng));
    cand.fb.push_back(random_pure_vector(db, rng));
  }
  if (variant == 0) {
    // Eigenvector init: product-project each eigenvector, weight by eigenvalue.
    const Eigh e = eigh(rho.m);
    std::fill(cand.w.begin(), cand.w.end(), 0.0);
    for (Eigen::Index c = 0; c < e.values.size() && c < kTerms; ++c) {
      const Eigen::Index src = e.values.size() - 1 - c;  // descending
      cand.w[std::size_t(c)] = std::max(0.0, e.values[src]);
      product_projection(e.vectors.col(src), n, a, b, cand.fa[std::size_t(c)],
                         cand.fb[std::size_t(c)]);
    }
  } else if (variant == 1) {
    // Computational-basis init weighted by the diagonal of rho.
    std::fill(cand.w.begin(), cand.w.end(), 0.0);
    for (Eigen::Index z = 0; z < d && z < kTerms; ++z) {
      cand.w[std::size_t(z)] = std::max(0.0, rho.m(z, z).real());
      Vec& fa = cand.fa[std::size_t(z)];
      Vec& fb = cand.fb[std::size_t(z)];
      fa.setZero();
      fb.setZero();
      uint64_t ia = 0, ib = 0;
      for (std::size_t k = 0; k < a.size(); ++k)
        ia = (ia << 1) | uint64_t(bit_at(uint64_t(z), n, a[k]));
      for (std::size_t k = 0; k < b.size(); ++k)
        ib = (ib << 1) | uint64_t(bit_at(uint64_t(z), n, b[k]));
      fa[Eigen::Index(ia)] = 1.0;
      fb[Eigen::Index(ib)] = 1.0;
    }
  }

  SepSearchResult res;
  const auto objective = [&](const SepCandidate& c) {
    double total = 0.0;
    for (double w : c.w) total += std::max(0.0, w);
    Mat sigma = Mat::Zero(d, d);
    if (total > 0.0) {
      for (int t = 0; t < kTerms; ++t) {
        const double w = std::max(0.0, c.w[std::size_t(t)]) / total;
        if (w <= 0.0) continue;
        const Vec psi = product_vector(n, a, b, c.fa[std::size_t(t)], c.fb[std::size_t(t)]);
        sigma += w * (psi * psi.adjoint());
      }
    }
    ++res.evals;
    return 0.5 * trace_norm_hermitian(rho.m - sigma);
  };

  double best = objective(cand);
  double step = 0.5;
  while (step >= 1e-3) {
    bool improved = false;
    for (int t = 0; t < kTerms && res.evals < budget; ++t) {
      for (int comp = 0; comp < 3 && res.evals < budget; ++comp) {
        SepCandidate trial = cand;
        if (comp == 0) {
          Vec& v = trial.fa[std::size_t(t)];
          for (Eigen::Index q = 0; q < v.size(); ++q)
            v[q] += step * cplx(rng.normal(), rng.normal());
          v = normalized_or_basis(std::move(v));
        } else if (comp == 1) {
          Vec& v = trial.fb[std::size_t(t)];
          for (Eigen::Index q = 0; q < v.size(); ++q)
            v[q] += step * cplx(rng.normal(), rng.normal());
          v = normalized_or_basis(std::move(v));
        } else {
          trial.w[std::size_t(t)] =
              std::max(0.0, trial.w[std::size_t(t)] + step * 0.25 * rng.normal());
        }
        const double val = objective(trial);
        if (val < best - 1e-12) {
          best = val;
          cand = std::move(trial);
          improved = true;
        }
      }
    }
    if (res.evals >= budget) {
      res.exhausted = true;
      break;
    }
    if (!improved) step *= 0.6;
  }
  res.upper = best;
  return res;
}

}  // namespace

SepDistanceEstimate sep_distance_estimate(const DensityMatrix& rho, const std::vector<int>& a,
                                          const std::vector<int>& b, int budget, uint64_t seed) {
  const int n = rho.n;
  require(n <= 4, ErrorKind::CapExceeded, "sep_distance_estimate: at most 4 qubits");
  require(budget >= 1, ErrorKind::BadRange, "sep_distance_estimate: budget must be positive");
  require(!a.empty() && !b.empty(), ErrorKind::EmptySet, "sep_distance_estimate: empty part");
  uint64_t seen = 0;
  for (int q : a) {
    require(q >= 0 && q < n, ErrorKind::BadIndex, "sep_distance_estimate: qubit out of range");
    seen |= uint64_t(1) << q;
  }
  for (int q : b) {
    require(q >= 0 && q < n, ErrorKind::BadIndex, "sep_distance_estimate: qubit out of range");
    require(!(seen & (uint64_t(1) << q)), ErrorKind::BadIndex,
            "sep_distance_estimate: parts must be disjoint");
    seen |= uint64_t(1) << q;
  }
  require(seen == (uint64_t(1) << n) - 1, ErrorKind::BadIndex,
          "sep_distance_estimate: parts must cover all qubits");

  SepDistanceEstimate est;
  est.lower = negativity(rho, b) / double(dim_of(int(std::min(a.size(), b.size()))));

  constexpr int kRestarts = 4;
  const int per = std::max(1, budget / kRestarts);
  std::vector<std::future<SepSearchResult>> futs;
  for (int r = 0; r < kRestarts; ++r)
    futs.push_back(std::async(std::launch::async, [&, r] {
      return sep_search_restart(rho, a, b, per, derive_seed(seed, "sep-distance", uint64_t(r)),
                                r % 3);
    }));
  est.upper = std::numeric_limits<double>::infinity();
  for (auto& f : futs) {
    const SepSearchResult r = f.get();
    est.evals += r.evals;
    est.budget_exhausted = est.budget_exhausted || r.exhausted;
    est.upper = std::min(est.upper, r.upper);
  }
  return est;
}

// ---------------------------------------------------------------------------
// Max-entropy completion
// ---------------------------------------------------------------------------

namespace {

struct MarginalConstraints {
  std::vector<std::vector<int>> subsets;  // keep-lists, each of size n-1 (or empty for n=1)
  Mat l;                                  // stacked vec(partial trace) rows + trace row
  Vec c;
  Eigen::CompleteOrthogonalDecomposition<Mat> cod;

  explicit MarginalConstraints(const DensityMatrix& rho) {
    const int n = rho.n;
    const Eigen::Index d = dim_of(n);
    if (n > 1)
      for (int drop = 0; drop < n; ++drop) {
        std::vector<int> keep;
        for (int q = 0; q < n; ++q)
          if (q != drop) keep.push_back(q);
        subsets.push_back(std::move(keep));
      }
    Eigen::Index rows = 1;  // trace row
    for (const auto& s : subsets) rows += dim_of(int(s.size())) * dim_of(int(s.size()));
    l = Mat::Zero(rows, d * d);
    c = Vec::Zero(rows);
    // Columns: image of each matrix unit under every constraint functional.
    for (Eigen::Index col = 0; col < d * d; ++col) {
      Mat unit = Mat::Zero(d, d);
      unit(col % d, col / d) = 1.0;  // column-stacking order
      Eigen::Index row = 0;
      for (const auto& s : subsets) {
        const Vec m = vec(partial_trace(unit, n, s));
        l.block(row, col, m.size(), 1) = m;
        row += m.size();
      }
      l(row, col) = unit.trace();
    }
    Eigen::Index row = 0;
    for (const auto& s : subsets) {
      const Vec m = vec(partial_trace(rho.m, n, s));
      c.segment(row, m.size()) = m;
      row += m.size();
    }
    c[row] = 1.0;
    cod.compute(l);
  }

  // Least-squares projection onto {X : L vec(X) = c} (Hermitian-preserving
  // up to the final hermitize).
  Mat project(const Mat& x) const {
    const Vec vx = vec(x);
    const Vec fix = cod.solve(l * vx - c);
    return hermitize(unvec(vx - fix, x.rows()));
  }

  // Component of (the Hermitian matrix) g orthogonal to all constraint rows.
  Mat null_project(const Mat& g) const {
    const Vec vg = vec(g);
    const Vec fix = cod.solve(l * vg);
    return hermitize(unvec(vg - fix, g.rows()));
  }

  double residual(const DensityMatrix& rho, const Mat& x) const {
    double worst = std::abs(x.trace().real() - 1.0);
    for (const auto& s : subsets)
      worst = std::max(worst, trace_norm_hermitian(partial_trace(x, rho.n, s) -
                                                   partial_trace(rho.m, rho.n, s)));
    return worst;
  }
};

Mat psd_clip(const Mat& x, double floor = 0.0) {
  const Eigh e = eigh(x);
  RVec vals = e.values;
  bool dirty = false;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals[i] < floor) {
      vals[i] = 0.0;
      dirty = true;
    }
  if (!dirty) return x;
  return e.vectors * vals.asDiagonal().toDenseMatrix().cast<cplx>() * e.vectors.adjoint();
}

}  // namespace

MaxEntSolution max_entropy_completion(const DensityMatrix& rho) {
  require(rho.n <= 4, ErrorKind::CapExceeded, "max_entropy_completion: at most 4 qubits");
  const Eigen::Index d = dim_of(rho.n);
  const MarginalConstraints mc(rho);
  MaxEntSolution sol;

  // Phase 1: alternating projections from the maximally mixed state until the
  // iterate is feasible (marginals matched, PSD).
  Mat x = Mat::Identity(d, d) / double(d);
  for (int it = 0; it < 2000; ++it) {
    ++sol.iterations;
    x = mc.project(x);
    const double min_eig = min_eig_hermitian(x);
    if (mc.residual(rho, x) <= 1e-9 && min_eig >= -1e-11) break;
    if (min_eig < 0.0) x = psd_clip(x, -1e-14);
  }

  // Phase 2: projected entropy ascent (S is concave; the feasible set is
  // convex, so hill climbing converges to the global maximum).
  const auto entropy_of = [](const Mat& m) { return entropy_bits(eigh(m).values); };
  double s_best = entropy_of(x);
  double eta = 0.25;
  for (int it = 0; it < 600 && eta >= 1e-9; ++it) {
    ++sol.iterations;
    const Mat grad = -hermitian_function(x, [](double v) { return std::log(v + 1e-12); });
    const Mat dir = mc.null_project(grad);
    const double dn = dir.norm();
    if (dn < 1e-12) break;
    const Mat cand0 = x + (eta / dn) * dir;
    Mat cand = mc.project(psd_clip(cand0, -1e-14));
    if (min_eig_hermitian(cand) < -1e-10) cand = mc.project(psd_clip(cand, -1e-14));
    const double s_cand = entropy_of(cand);
    if (s_cand > s_best + 1e-12 && mc.residual(rho, cand) <= 1e-7 &&
        min_eig_hermitian(cand) >= -1e-9) {
      x = std::move(cand);
      s_best = s_cand;
      eta = std::min(eta * 1.3, 1.0);
    } else {
      eta *= 0.5;
    }
  }

  // Final cleanup: exact feasibility first, then clamp eigen-dust.
  x = mc.project(x);
  x = psd_clip(x, -1e-14);
  sol.constraint_residual = mc.residual(rho, x);
  require(sol.constraint_residual <= 1e-6, ErrorKind::NoConvergence,
          "max_entropy_completion: residual above tolerance");
  sol.rho_star = DensityMatrix{rho.n, std::move(x)};
  sol.entropy = {entropy_of(sol.rho_star.m)};
  return sol;
}

double ent_measure(const DensityMatrix& rho) {
  const MaxEntSolution sol = max_entropy_completion(rho);
  return sol.entropy.value - von_neumann_entropy(rho).value;
}

EntReport ent_tilde(const DensityMatrix& rho) {
  const int n = rho.n;
  require(n <= 4, ErrorKind::CapExceeded, "ent_tilde: at most 4 qubits");
  EntReport rep;
  for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<int> subset;
    for (int q = 0; q < n; ++q)
      if (mask & (uint32_t(1) << q)) subset.push_back(q);
    const double e = ent_measure(int(subset.size()) == n ? rho : reduced_state(rho, subset));
    rep.per_subset[subset] = e;
    rep.ent_tilde += e;
    if (int(subset.size()) == n) rep.ent = e;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Two-qubit concurrence / entanglement of formation, emergent entanglement
// ---------------------------------------------------------------------------

double concurrence(const DensityMatrix& rho) {
  require(rho.n == 2, ErrorKind::DimensionMismatch, "concurrence: two-qubit states only");
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;  // Y (x) Y
  const Mat m = rho.m * yy * rho.m.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(m);
  std::array<double, 4> lam{};
  for (int i = 0; i < 4; ++i) lam[std::size_t(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double entanglement_of_formation(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return binary_entropy_bits(x);
}

namespace {

struct EmergentRestartResult {
  double value = 0.0;
  int evals = 0;
  bool exhausted = false;
};

EmergentRestartResult emergent_restart(const DensityMatrix& rho, int i, int j,
                                       const std::vector<int>& measured, int budget,
                                       uint64_t seed) {
  const int n = rho.n;
  const int m = int(measured.size());
  Rng rng(seed);
  std::vector<double> angles(std::size_t(2 * m));  // (theta, phi) per qubit
  for (int k = 0; k < m; ++k) {
    angles[std::size_t(2 * k)] = M_PI * rng.uniform();
    angles[std::size_t(2 * k + 1)] = 2.0 * M_PI * rng.uniform();
  }

  EmergentRestartResult res;
  const Eigen::Index d = dim_of(n);
  const auto value_of = [&](const std::vector<double>& ang) {
    // Local basis vectors per measured qubit.
    std::vector<std::array<cplx, 4>> basis;  // [o*2 + bit]
    basis.resize(std::size_t(m));
    for (int k = 0; k < m; ++k) {
      const double th = ang[std::size_t(2 * k)], ph = ang[std::size_t(2 * k + 1)];
      const cplx e = std::exp(cplx(0.0, ph));
      basis[std::size_t(k)] = {std::cos(th / 2), e * std::sin(th / 2),
                               -std::conj(e) * std::sin(th / 2), cplx(std::cos(th / 2))};
    }
    double total = 0.0;
    Mat bra(4, d);
    for (uint64_t o = 0; o < (uint64_t(1) << m); ++o) {
      // bra rows: <o| on measured qubits, identity on (i, j).
      bra.setZero();
      for (Eigen::Index idx = 0; idx < d; ++idx) {
        cplx amp = 1.0;
        for (int k = 0; k < m; ++k) {
          const int ob = int((o >> (m - 1 - k)) & 1);
          amp *= std::conj(basis[std::size_t(k)][std::size_t(ob * 2 + bit_at(uint64_t(idx), n, measured[std::size_t(k)]))]);
          if (amp == cplx(0.0)) break;
        }
        if (amp == cplx(0.0)) continue;
        const Eigen::Index p = Eigen::Index((uint64_t(bit_at(uint64_t(idx), n, i)) << 1) |
                                            uint64_t(bit_at(uint64_t(idx), n, j)));
        bra(p, idx) = amp;
      }
      Mat sigma = bra * rho.m * bra.adjoint();
      const double po = sigma.trace().real();
      if (po < 1e-14) continue;
      sigma /= po;
      total += po * entanglement_of_formation(DensityMatrix{2, hermitize(sigma)});
    }
    ++res.evals;
    return total;
  };

  double best = value_of(angles);
  double step = 0.6;
  while (step >= 1e-4 && res.evals < budget) {
    bool improved = false;
    for (std::size_t c = 0; c < angles.size() && res.evals < budget; ++c) {
      for (double sgn : {1.0, -1.0}) {
        if (res.evals >= budget) break;
        std::vector<double> trial = angles;
        trial[c] += sgn * step;
        const double v = value_of(trial);
        if (v > best + 1e-12) {
          best = v;
          angles = std::move(trial);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  res.exhausted = res.evals >= budget && step >= 1e-4;
  res.value = best;
  return res;
}

}  // namespace

EmergentResult emergent_entanglement(const DensityMatrix& rho, int i, int j, int budget,
                                     uint64_t seed) {
  const int n = rho.n;
  require(n >= 2 && n <= 5, ErrorKind::CapExceeded, "emergent_entanglement: need 2 <= n <= 5");
  require(i != j && i >= 0 && i < n && j >= 0 && j < n, ErrorKind::BadIndex,
          "emergent_entanglement: need two distinct qubits in range");
  require(budget >= 1, ErrorKind::BadRange, "emergent_entanglement: budget must be positive");

  // Nothing to measure with n == 2 (entanglement of formation is symmetric
  // under swapping the pair, so the (i, j) order is immaterial).
  if (n == 2) return {entanglement_of_formation(rho), false, 1};

  std::vector<int> measured;
  for (int q = 0; q < n; ++q)
    if (q != i && q != j) measured.push_back(q);

  constexpr int kRestarts = 4;
  const int per = std::max(1, budget / kRestarts);
  std::vector<std::future<EmergentRestartResult>> futs;
  for (int r = 0; r < kRestarts; ++r)
    futs.push_back(std::async(std::launch::async, [&, r] {
      return emergent_restart(rho, i, j, measured, per,
                              derive_seed(seed, "emergent-ent", uint64_t(r)));
    }));
  EmergentResult out;
  for (auto& f : futs) {
    const EmergentRestartResult r = f.get();
    out.evals += r.evals;
    out.budget_exhausted = out.budget_exhausted || r.exhausted;
    out.value = std::max(out.value, r.value);
  }
  return out;
}

}  // namespace noiselab

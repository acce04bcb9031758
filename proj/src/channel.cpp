#include "noiselab/channel.hpp"

#include <bit>
#include <cmath>

namespace noiselab {

namespace {

std::size_t kraus_bytes(std::size_t count, int n) {
  const std::size_t d = std::size_t(1) << n;
  return count * d * d * sizeof(cplx);
}

// Materialize sqrt(mass) * P for every supported string, if caps allow.
std::vector<Mat> kraus_of_mixture(const PauliMixture& pm) {
  std::vector<Mat> out;
  const int n = pm.n();
  const std::size_t support = pm.support_size();
  if (n > caps().dense_state_qubits || support > std::size_t(caps().kraus_cap) ||
      kraus_bytes(support, n) > caps().kraus_bytes)
    return out;
  // A mixture with negative mass is not a probabilistic Kraus mixture; leave
  // such channels mixture-only so diagnostics see the true representation.
  bool negative = false;
  pm.for_each([&](uint64_t, double m) { negative = negative || m < 0; });
  if (negative) return out;
  out.reserve(support);
  pm.for_each([&](uint64_t flat, double m) {
    out.push_back(std::sqrt(m) * pauli_matrix(PauliString::from_flat(n, flat)));
  });
  return out;
}

Mat build_superop(const QuantumChannel& e) {
  require(e.n() <= caps().superop_qubits, ErrorKind::CapExceeded,
          "superoperator: n exceeds superop cap");
  const Eigen::Index d = dim_of(e.n()), d2 = d * d;
  Mat s = Mat::Zero(d2, d2);
  if (e.has_kraus()) {
    for (const Mat& a : e.kraus()) s += kron(a.conjugate(), a);
  } else if (e.pauli_rep()) {
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      const Mat p = pauli_matrix(PauliString::from_flat(e.n(), flat));
      s += m * kron(p.conjugate(), p);
    });
  } else {
    fail(ErrorKind::MissingSuperop, "superoperator: channel has no representation");
  }
  return s;
}

}  // namespace

QuantumChannel QuantumChannel::from_pauli_mixture(PauliMixture pm) {
  QuantumChannel e(pm.n(), kraus_of_mixture(pm));
  e.set_pauli_rep(std::move(pm));
  return e;
}

const std::vector<Mat>& QuantumChannel::kraus() const {
  require(!kraus_.empty(), ErrorKind::CapExceeded,
          "channel has no dense Kraus representation at this size");
  return kraus_;
}

const Mat& QuantumChannel::superop() const {
  std::call_once(cell_->once, [&] { cell_->value = build_superop(*this); });
  return cell_->value;
}

QuantumChannel identity_channel(int n) {
  PauliMixture pm(n);
  pm.add(PauliString::identity(n), 1.0);
  if (n <= caps().dense_state_qubits)
    return QuantumChannel::from_pauli_mixture(std::move(pm));
  QuantumChannel e(n, {});
  e.set_pauli_rep(std::move(pm));
  return e;
}

QuantumChannel unitary_channel(const Mat& u) {
  const Eigen::Index d = u.rows();
  require(d == u.cols() && d > 0 && (d & (d - 1)) == 0, ErrorKind::DimensionMismatch,
          "unitary_channel: matrix is not a square power-of-two dim");
  int n = 0;
  while (dim_of(n) < d) ++n;
  require((u.adjoint() * u - Mat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10,
          ErrorKind::ValidationError, "unitary_channel: matrix is not unitary");
  return QuantumChannel(n, {u});
}

DensityMatrix apply(const QuantumChannel& e, const DensityMatrix& rho) {
  require(e.n() == rho.n, ErrorKind::DimensionMismatch, "apply: qubit counts differ");
  const Eigen::Index d = dim_of(e.n());
  Mat out = Mat::Zero(d, d);
  if (e.pauli_rep()) {
    // sum_P m_P P rho P†: a Pauli moves |c><c'| to |c^x><c'^x| with sign
    // (-1)^{<z,c>+<z,c'>}; the i^{xz} phases cancel between P and P†.
    const int n = e.n();
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      const uint64_t x = flat >> n, z = flat & ((uint64_t(1) << n) - 1);
      for (Eigen::Index r = 0; r < d; ++r) {
        const int sr = std::popcount(uint64_t(r) & z) & 1;
        const Eigen::Index rx = Eigen::Index(uint64_t(r) ^ x);
        for (Eigen::Index c = 0; c < d; ++c) {
          const int sc = std::popcount(uint64_t(c) & z) & 1;
          const double sgn = (sr ^ sc) ? -m : m;
          out(rx, Eigen::Index(uint64_t(c) ^ x)) += sgn * rho.m(r, c);
        }
      }
    });
  } else {
    for (const Mat& a : e.kraus()) out += a * rho.m * a.adjoint();
  }
  return {rho.n, std::move(out)};
}

Mat choi_matrix(const QuantumChannel& e) {
  const Eigen::Index d = dim_of(e.n()), d2 = d * d;
  require(e.n() <= caps().superop_qubits, ErrorKind::CapExceeded,
          "choi_matrix: n exceeds superop cap");
  Mat c = Mat::Zero(d2, d2);
  if (e.has_kraus()) {
    for (const Mat& a : e.kraus()) {
      const Vec v = vec(a);
      c += v * v.adjoint();
    }
  } else if (e.pauli_rep()) {
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      const Vec v = vec(pauli_matrix(PauliString::from_flat(e.n(), flat)));
      c += m * (v * v.adjoint());
    });
  } else {
    fail(ErrorKind::MissingSuperop, "choi_matrix: channel has no representation");
  }
  return c;
}

std::vector<Mat> kraus_from_choi(const Mat& choi, int n, double drop_tol) {
  const Eigen::Index d = dim_of(n);
  require(choi.rows() == d * d && choi.cols() == d * d, ErrorKind::DimensionMismatch,
          "kraus_from_choi: Choi dimension mismatch");
  Eigh es = eigh(choi);
  std::vector<Mat> out;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double lam = es.values[i];
    if (lam <= drop_tol) continue;
    out.push_back(std::sqrt(lam) * unvec(es.vectors.col(i), d));
  }
  return out;
}

QuantumChannel canonical_kraus(const QuantumChannel& e) {
  QuantumChannel out(e.n(), kraus_from_choi(choi_matrix(e), e.n()));
  if (e.pauli_rep()) out.set_pauli_rep(*e.pauli_rep());
  return out;
}

Mat superop_to_choi(const Mat& s, int n) {
  const Eigen::Index d = dim_of(n);
  Mat c(d * d, d * d);
  for (Eigen::Index r1 = 0; r1 < d; ++r1)
    for (Eigen::Index r2 = 0; r2 < d; ++r2)
      for (Eigen::Index c1 = 0; c1 < d; ++c1)
        for (Eigen::Index c2 = 0; c2 < d; ++c2)
          c(c1 * d + r1, c2 * d + r2) = s(r2 * d + r1, c2 * d + c1);
  return c;
}

Mat choi_to_superop(const Mat& c, int n) {
  const Eigen::Index d = dim_of(n);
  Mat s(d * d, d * d);
  for (Eigen::Index r1 = 0; r1 < d; ++r1)
    for (Eigen::Index r2 = 0; r2 < d; ++r2)
      for (Eigen::Index c1 = 0; c1 < d; ++c1)
        for (Eigen::Index c2 = 0; c2 < d; ++c2)
          s(r2 * d + r1, c2 * d + c1) = c(c1 * d + r1, c2 * d + r2);
  return s;
}

double superop_distance(const QuantumChannel& a, const QuantumChannel& b) {
  return (a.superop() - b.superop()).norm();
}

CptpReport validate_cptp(const QuantumChannel& e) {
  CptpReport rep;
  const Eigen::Index d = dim_of(e.n());
  if (!e.has_kraus() && e.pauli_rep()) {
    // Exact rules for a Pauli mixture: sum A†A = (total mass) I, and the
    // Choi spectrum is {2^n * m_P} padded with zeros.
    const auto& pm = *e.pauli_rep();
    rep.tp_residual = std::abs(pm.total() - 1.0);
    double min_mass = 0.0;
    bool full_support = pm.support_size() == (std::size_t(1) << (2 * pm.n()));
    double smallest = std::numeric_limits<double>::infinity();
    pm.for_each([&](uint64_t, double m) { smallest = std::min(smallest, m); });
    if (std::isfinite(smallest)) min_mass = full_support ? smallest : std::min(smallest, 0.0);
    rep.min_choi_eig = double(d) * min_mass;
  } else {
    Mat defect = -Mat::Identity(d, d);
    for (const Mat& a : e.kraus()) defect += a.adjoint() * a;
    rep.tp_residual = spectral_norm_hermitian(defect);
    // The nonzero Choi spectrum equals the spectrum of the Gram matrix
    // G_kl = Tr(A_k† A_l); no 4^n-dim eigensolve needed.
    const auto& ks = e.kraus();
    const Eigen::Index m = Eigen::Index(ks.size());
    Mat gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i; j < m; ++j) {
        gram(i, j) = (ks[i].adjoint() * ks[j]).trace();
        gram(j, i) = std::conj(gram(i, j));
      }
    double min_eig = min_eig_hermitian(gram);
    if (m < d * d) min_eig = std::min(min_eig, 0.0);
    rep.min_choi_eig = min_eig;
  }
  rep.ok = rep.tp_residual <= tol::tp_resid && rep.min_choi_eig >= tol::choi_psd;
  return rep;
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  require(second.n() == first.n(), ErrorKind::DimensionMismatch, "compose: qubit counts differ");
  const int n = first.n();
  std::vector<Mat> ks;
  if (second.has_kraus() && first.has_kraus()) {
    const std::size_t count = second.kraus().size() * first.kraus().size();
    if (count <= std::size_t(caps().kraus_cap) && kraus_bytes(count, n) <= caps().kraus_bytes) {
      ks.reserve(count);
      for (const Mat& b : second.kraus())
        for (const Mat& a : first.kraus()) ks.push_back(b * a);
    }
  }
  std::optional<PauliMixture> pm;
  if (second.pauli_rep() && first.pauli_rep()) {
    // Pauli channels compose by convolution of the x/z words; conjugation
    // phases cancel, so masses just convolve.
    PauliMixture out(n);
    first.pauli_rep()->for_each([&](uint64_t fa, double ma) {
      second.pauli_rep()->for_each([&](uint64_t fb, double mb) {
        out.add(fa ^ fb, ma * mb);
      });
    });
    pm = std::move(out);
  }
  if (ks.empty() && !pm) {
    // Superoperator route with Choi re-extraction (Kraus canonicalization).
    require(n <= caps().superop_qubits, ErrorKind::CapExceeded,
            "compose: Kraus cap exceeded and superop route unavailable");
    const Mat s = second.superop() * first.superop();
    ks = kraus_from_choi(superop_to_choi(s, n), n);
  }
  QuantumChannel out(n, std::move(ks));
  if (pm) out.set_pauli_rep(std::move(*pm));
  return out;
}

QuantumChannel conjugate_by_unitary(const QuantumChannel& e, const Mat& u) {
  require(u.rows() == dim_of(e.n()) && u.cols() == dim_of(e.n()), ErrorKind::DimensionMismatch,
          "conjugate_by_unitary: unitary dim does not match channel");
  std::vector<Mat> ks;
  ks.reserve(e.kraus().size());
  for (const Mat& a : e.kraus()) ks.push_back(u * a * u.adjoint());
  return QuantumChannel(e.n(), std::move(ks));
}

QuantumChannel conjugate_by_clifford(const QuantumChannel& e, const Circuit& c) {
  require(c.n == e.n(), ErrorKind::DimensionMismatch, "conjugate_by_clifford: sizes differ");
  require(c.all_clifford(), ErrorKind::NotClifford, "conjugate_by_clifford: non-Clifford circuit");
  std::optional<PauliMixture> pm;
  if (e.pauli_rep()) {
    PauliMixture out(e.n());
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      out.add(clifford_conjugate(PauliString::from_flat(e.n(), flat), c).p, m);
    });
    pm = std::move(out);
  }
  std::vector<Mat> ks;
  if (e.has_kraus() && e.n() <= caps().dense_state_qubits) {
    const Mat u = segment_unitary(c, 0, c.T());
    ks.reserve(e.kraus().size());
    for (const Mat& a : e.kraus()) ks.push_back(u * a * u.adjoint());
  }
  require(pm || !ks.empty(), ErrorKind::CapExceeded,
          "conjugate_by_clifford: no usable representation");
  QuantumChannel out(e.n(), std::move(ks));
  if (pm) out.set_pauli_rep(std::move(*pm));
  return out;
}

QuantumChannel mix(const std::vector<QuantumChannel>& channels,
                   const std::vector<double>& weights) {
  require(!channels.empty(), ErrorKind::BadWeights, "mix: empty channel list");
  require(channels.size() == weights.size(), ErrorKind::BadWeights,
          "mix: weight count does not match channel count");
  double sum = 0;
  for (double w : weights) {
    require(w >= 0, ErrorKind::BadWeights, "mix: negative weight");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= tol::weight_sum, ErrorKind::BadWeights,
          "mix: weights do not sum to 1");
  const int n = channels.front().n();
  for (const auto& e : channels)
    require(e.n() == n, ErrorKind::DimensionMismatch, "mix: qubit counts differ");

  std::vector<Mat> ks;
  bool all_kraus = true;
  std::size_t total = 0;
  for (const auto& e : channels) {
    if (!e.has_kraus()) {
      all_kraus = false;
      break;
    }
    total += e.kraus().size();
  }
  if (all_kraus && total <= std::size_t(caps().kraus_cap) &&
      kraus_bytes(total, n) <= caps().kraus_bytes) {
    ks.reserve(total);
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const double rw = std::sqrt(weights[i]);
      for (const Mat& a : channels[i].kraus()) ks.push_back(rw * a);
    }
  }

  std::optional<PauliMixture> pm;
  bool all_mixture = true;
  for (const auto& e : channels)
    if (!e.pauli_rep()) {
      all_mixture = false;
      break;
    }
  if (all_mixture) {
    PauliMixture out(n);
    for (std::size_t i = 0; i < channels.size(); ++i) {
      const double w = weights[i];
      if (w == 0) continue;
      channels[i].pauli_rep()->for_each([&](uint64_t flat, double m) { out.add(flat, w * m); });
    }
    pm = std::move(out);
  }

  if (ks.empty() && !pm) {
    require(n <= caps().superop_qubits, ErrorKind::CapExceeded,
            "mix: Kraus cap exceeded and superop route unavailable");
    const Eigen::Index d2 = dim_of(n) * dim_of(n);
    Mat choi = Mat::Zero(d2, d2);
    for (std::size_t i = 0; i < channels.size(); ++i) choi += weights[i] * choi_matrix(channels[i]);
    ks = kraus_from_choi(choi, n);
  }
  QuantumChannel out(n, std::move(ks));
  if (pm) out.set_pauli_rep(std::move(*pm));
  return out;
}

QuantumChannel depolarizing(int n, double p) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return depolarizing(n, p, all);
}

QuantumChannel depolarizing(int n, double p, const std::vector<int>& support) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::BadProbability, "depolarizing: p outside [0,1]");
  for (int q : support)
    require(q >= 0 && q < n, ErrorKind::BadIndex, "depolarizing: support qubit out of range");
  uint32_t supp_mask = 0;
  for (int q : support) supp_mask |= uint32_t(1) << (n - 1 - q);
  const int k = int(support.size());
  const double m_i = 1.0 - 0.75 * p, m_xyz = 0.25 * p;

  PauliMixture pm(n);
  if (std::size_t(1) << (2 * k) <= PauliMixture::kSparseLimit) {
    // Enumerate letter choices on the support only.
    std::vector<uint64_t> flats{PauliString::identity(n).flat()};
    std::vector<double> masses{1.0};
    for (int q : support) {
      std::vector<uint64_t> nf;
      std::vector<double> nm;
      nf.reserve(flats.size() * 4);
      nm.reserve(flats.size() * 4);
      const uint64_t xflat = uint64_t(1) << (n + (n - 1 - q));
      const uint64_t zflat = uint64_t(1) << (n - 1 - q);
      for (std::size_t i = 0; i < flats.size(); ++i) {
        nf.push_back(flats[i]);
        nm.push_back(masses[i] * m_i);
        nf.push_back(flats[i] | xflat);
        nm.push_back(masses[i] * m_xyz);
        nf.push_back(flats[i] | xflat | zflat);
        nm.push_back(masses[i] * m_xyz);
        nf.push_back(flats[i] | zflat);
        nm.push_back(masses[i] * m_xyz);
      }
      flats.swap(nf);
      masses.swap(nm);
    }
    for (std::size_t i = 0; i < flats.size(); ++i) pm.add(flats[i], masses[i]);
  } else {
    pm.make_dense();
    const uint64_t count = uint64_t(1) << (2 * n);
    for (uint64_t flat = 0; flat < count; ++flat) {
      const uint32_t x = uint32_t(flat >> n), z = uint32_t(flat & ((uint64_t(1) << n) - 1));
      if ((x | z) & ~supp_mask) continue;  // letters off support must be I
      const int w = std::popcount(x | z);
      pm.add(flat, std::pow(m_xyz, w) * std::pow(m_i, k - w));
    }
  }
  return QuantumChannel::from_pauli_mixture(std::move(pm));
}

QuantumChannel correlated_depolarizing(int n, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::BadProbability,
          "correlated_depolarizing: p outside [0,1]");
  PauliMixture pm(n);
  const uint64_t count = uint64_t(1) << (2 * n);
  const double uniform = p / double(count);
  if (count <= PauliMixture::kSparseLimit) {
    for (uint64_t flat = 0; flat < count; ++flat)
      pm.add(flat, flat == 0 ? 1.0 - p + uniform : uniform);
  } else {
    pm.make_dense();
    for (uint64_t flat = 0; flat < count; ++flat)
      pm.add(flat, flat == 0 ? 1.0 - p + uniform : uniform);
  }
  return QuantumChannel::from_pauli_mixture(std::move(pm));
}

QuantumChannel random_channel(int n, int kraus_count, Rng& rng) {
  require(n >= 1 && n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "random_channel: n outside the dense cap");
  require(kraus_count >= 1, ErrorKind::BadRange, "random_channel: need at least one Kraus term");
  const Eigen::Index d = dim_of(n);
  require(kraus_bytes(std::size_t(kraus_count), n) <= caps().kraus_bytes, ErrorKind::CapExceeded,
          "random_channel: Kraus set exceeds the byte budget");
  std::vector<Mat> g;
  g.reserve(std::size_t(kraus_count));
  Mat s = Mat::Zero(d, d);
  for (int k = 0; k < kraus_count; ++k) {
    g.push_back(ginibre(d, d, rng));
    s += g.back().adjoint() * g.back();
  }
  const Mat s_inv_sqrt = hermitian_function(hermitize(s), [](double x) {
    return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0;
  });
  for (Mat& a : g) a = a * s_inv_sqrt;
  return QuantumChannel(n, std::move(g));
}

QuantumChannel extend_channel(const QuantumChannel& e, int n, const std::vector<int>& qubits) {
  require(int(qubits.size()) == e.n(), ErrorKind::DimensionMismatch,
          "extend_channel: channel size does not match qubit list");
  std::optional<PauliMixture> pm;
  if (e.pauli_rep()) {
    PauliMixture out(n);
    const int k = e.n();
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      const uint64_t xs = flat >> k, zs = flat & ((uint64_t(1) << k) - 1);
      uint64_t x = 0, z = 0;
      for (int j = 0; j < k; ++j) {
        const uint64_t bit = uint64_t(1) << (n - 1 - qubits[j]);
        if ((xs >> (k - 1 - j)) & 1) x |= bit;
        if ((zs >> (k - 1 - j)) & 1) z |= bit;
      }
      out.add((x << n) | z, m);
    });
    pm = std::move(out);
  }
  std::vector<Mat> ks;
  if (e.has_kraus() && n <= caps().dense_state_qubits &&
      kraus_bytes(e.kraus().size(), n) <= caps().kraus_bytes) {
    ks.reserve(e.kraus().size());
    for (const Mat& a : e.kraus()) ks.push_back(embed_operator(a, n, qubits));
  }
  require(pm || !ks.empty(), ErrorKind::CapExceeded, "extend_channel: no usable representation");
  QuantumChannel out(n, std::move(ks));
  if (pm) out.set_pauli_rep(std::move(*pm));
  return out;
}

namespace {

double rate_of_state(const QuantumChannel& e, const DensityMatrix& rho) {
  return trace_distance(rho, apply(e, rho));
}

}  // namespace

double channel_error_rate(const QuantumChannel& e, const RateStrategy& strategy) {
  const int n = e.n();
  require(n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "channel_error_rate: n exceeds dense cap");
  double best = 0.0;
  Vec best_psi;

  if (e.pauli_rep()) {
    // For a Pauli mixture, E(|b><b|) is diagonal and the basis-state rate has
    // the closed form 1 - sum of masses with trivial x word (same for all b).
    double q0 = 0.0;
    e.pauli_rep()->for_each([&](uint64_t flat, double m) {
      if ((flat >> n) == 0) q0 += m;
    });
    best = 1.0 - q0;
    best_psi = Vec::Zero(dim_of(n));
    best_psi(0) = 1.0;
  } else {
    for (Eigen::Index b = 0; b < dim_of(n); ++b) {
      const DensityMatrix rho = basis_state(n, uint64_t(b));
      const double d = rate_of_state(e, rho);
      if (d > best) {
        best = d;
        best_psi = Vec::Zero(dim_of(n));
        best_psi(b) = 1.0;
      }
    }
    if (best_psi.size() == 0) {
      best_psi = Vec::Zero(dim_of(n));
      best_psi(0) = 1.0;
    }
  }
  if (strategy.kind == RateStrategy::Kind::BasisStates) return best;

  Rng rng(derive_seed(strategy.seed, "rate-random-pure", 0));
  for (int i = 0; i < strategy.samples; ++i) {
    Vec cand(dim_of(n));
    for (Eigen::Index j = 0; j < cand.size(); ++j) cand[j] = rng.cnormal();
    cand.normalize();
    const double d = rate_of_state(e, pure_state(cand));
    if (d > best) {
      best = d;
      best_psi = cand;
    }
  }
  if (strategy.kind == RateStrategy::Kind::RandomPure) return best;

  // Refine: hill-climb over pure states from the best candidate found.
  Rng rng2(derive_seed(strategy.seed, "rate-refine", 0));
  Vec psi = best_psi;
  psi.normalize();
  double cur = rate_of_state(e, pure_state(psi));
  best = std::max(best, cur);
  double step = 0.3;
  for (int it = 0; it < strategy.refine_steps; ++it) {
    Vec g(psi.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng2.cnormal();
    Vec cand = psi + step * g;
    cand.normalize();
    const double d = rate_of_state(e, pure_state(cand));
    if (d > cur) {
      cur = d;
      psi = cand;
      step *= 1.3;
    } else {
      step *= 0.7;
      if (step < 1e-8) break;
    }
  }
  return std::max(best, cur);
}

}  // namespace noiselab

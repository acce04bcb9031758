#include "noiselab/syndrome.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace noiselab {

namespace {

// Coarse support mask of a flat Pauli index (bit (n-1-k) set iff qubit k
// carries a non-identity letter).
inline uint32_t coarse_of_flat(uint64_t flat, int n) {
  const uint32_t x = uint32_t(flat >> n);
  const uint32_t z = uint32_t(flat & ((uint64_t(1) << n) - 1));
  return x | z;
}

}  // namespace

double WeightProfile::tail(int s) const {
  double t = 0.0;
  for (int w = std::max(s, 0); w < int(f.size()); ++w) t += f[std::size_t(w)];
  return t;
}

SyndromeDistribution pauli_mass(const QuantumChannel& e) {
  SyndromeDistribution d;
  if (e.pauli_rep()) {
    d.masses = *e.pauli_rep();
    return d;
  }
  require(e.has_kraus(), ErrorKind::CapExceeded,
          "pauli_mass: channel has neither a Pauli mixture nor Kraus operators");
  require(e.n() <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "pauli_mass: dense expansion beyond the qubit cap");
  const int n = e.n();
  PauliMixture pm(n);
  for (const Mat& a : e.kraus()) {
    // mass(P) = sum_k |Tr(P A_k)|^2 / 4^n = sum_k |c_P(A_k)|^2 with the
    // normalized expansion coefficients c_P = Tr(P A)/2^n.
    const std::vector<cplx> coeff = pauli_coefficients(a, n);
    for (uint64_t fidx = 0; fidx < coeff.size(); ++fidx) {
      const double m = std::norm(coeff[fidx]);
      if (m != 0.0) pm.add(fidx, m);
    }
  }
  d.masses = std::move(pm);
  return d;
}

WeightProfile weight_profile(const SyndromeDistribution& d) {
  WeightProfile wp;
  const int n = d.n();
  wp.f.assign(std::size_t(n) + 1, 0.0);
  d.masses.for_each([&](uint64_t flat, double m) {
    wp.f[std::size_t(std::popcount(coarse_of_flat(flat, n)))] += m;
  });
  wp.alpha = 0.0;
  for (int s = 0; s <= n; ++s) wp.alpha += s * wp.f[std::size_t(s)];
  return wp;
}

double qubit_error_amount(const SyndromeDistribution& d, int k) {
  const int n = d.n();
  require(k >= 0 && k < n, ErrorKind::BadIndex, "qubit_error_amount: qubit index out of range");
  const uint32_t bit = uint32_t(1) << (n - 1 - k);
  double m = 0.0;
  d.masses.for_each([&](uint64_t flat, double mass) {
    if (coarse_of_flat(flat, n) & bit) m += mass;
  });
  return m;
}

CoarseDistribution coarse_distribution(const SyndromeDistribution& d) {
  CoarseDistribution cd;
  cd.n = d.n();
  cd.probs.assign(std::size_t(1) << cd.n, 0.0);
  d.masses.for_each([&](uint64_t flat, double m) {
    cd.probs[coarse_of_flat(flat, cd.n)] += m;
  });
  return cd;
}

double fault_probability(const CoarseDistribution& cd, int i) {
  require(i >= 0 && i < cd.n, ErrorKind::BadIndex, "fault_probability: qubit index out of range");
  const uint32_t bit = uint32_t(1) << (cd.n - 1 - i);
  double p = 0.0;
  for (std::size_t w = 0; w < cd.probs.size(); ++w)
    if (w & bit) p += cd.probs[w];
  return p;
}

double block_fault_probability(const CoarseDistribution& cd, const std::vector<int>& X) {
  require(!X.empty(), ErrorKind::EmptySet, "block_fault_probability: empty block");
  double sum = 0.0;
  for (int i : X) sum += fault_probability(cd, i);
  return sum / double(X.size());
}

namespace {

CorrelationRecord indicator_correlation(double pi, double pj, double pij) {
  CorrelationRecord rec;
  rec.covariance = pij - pi * pj;
  const double vi = pi * (1.0 - pi);
  const double vj = pj * (1.0 - pj);
  if (vi <= 0.0 || vj <= 0.0) {
    rec.degenerate = true;
    return rec;
  }
  rec.pearson = rec.covariance / std::sqrt(vi * vj);
  return rec;
}

}  // namespace

CorrelationRecord pair_correlation(const CoarseDistribution& cd, int i, int j) {
  require(i != j, ErrorKind::BadIndex, "pair_correlation: need two distinct qubits");
  require(i >= 0 && i < cd.n && j >= 0 && j < cd.n, ErrorKind::BadIndex,
          "pair_correlation: qubit index out of range");
  const uint32_t bi = uint32_t(1) << (cd.n - 1 - i);
  const uint32_t bj = uint32_t(1) << (cd.n - 1 - j);
  double pi = 0.0, pj = 0.0, pij = 0.0;
  for (std::size_t w = 0; w < cd.probs.size(); ++w) {
    const double p = cd.probs[w];
    if (p == 0.0) continue;
    const bool fi = (w & bi) != 0;
    const bool fj = (w & bj) != 0;
    if (fi) pi += p;
    if (fj) pj += p;
    if (fi && fj) pij += p;
  }
  return indicator_correlation(pi, pj, pij);
}

BlockCorrelationRecord block_correlation(const CoarseDistribution& cd, const std::vector<int>& X,
                                         const std::vector<int>& Y) {
  require(!X.empty() && !Y.empty(), ErrorKind::EmptySet, "block_correlation: empty block");
  uint32_t mx = 0, my = 0;
  for (int i : X) {
    require(i >= 0 && i < cd.n, ErrorKind::BadIndex, "block_correlation: index out of range");
    mx |= uint32_t(1) << (cd.n - 1 - i);
  }
  for (int j : Y) {
    require(j >= 0 && j < cd.n, ErrorKind::BadIndex, "block_correlation: index out of range");
    my |= uint32_t(1) << (cd.n - 1 - j);
  }
  require((mx & my) == 0, ErrorKind::BadIndex, "block_correlation: blocks must be disjoint");

  BlockCorrelationRecord rec;
  double px = 0.0, py = 0.0, pxy = 0.0;
  for (std::size_t w = 0; w < cd.probs.size(); ++w) {
    const double p = cd.probs[w];
    if (p == 0.0) continue;
    const bool fx = (w & mx) != 0;
    const bool fy = (w & my) != 0;
    if (fx) px += p;
    if (fy) py += p;
    if (fx && fy) pxy += p;
  }
  rec.any_fault = indicator_correlation(px, py, pxy);

  double sum = 0.0;
  int count = 0;
  for (int i : X)
    for (int j : Y) {
      const CorrelationRecord pc = pair_correlation(cd, i, j);
      if (!pc.degenerate) {
        sum += pc.pearson;
        ++count;
      }
    }
  rec.mean_pairwise = count > 0 ? sum / count : 0.0;
  return rec;
}

SyncClassification synchronization_report(const WeightProfile& wp, double delta,
                                          const SyncThresholds& th) {
  require(delta > 0.0 && delta < 0.75, ErrorKind::BadRange,
          "synchronization_report: need 0 < delta < 3/4");
  SyncClassification sc;
  const int n = wp.n();
  sc.alpha = wp.alpha;
  sc.delta = delta;
  sc.tail.assign(std::size_t(n) + 1, 0.0);
  double acc = 0.0;
  for (int s = n; s >= 0; --s) {
    acc += wp.f[std::size_t(s)];
    sc.tail[std::size_t(s)] = acc;
  }

  if (sc.alpha > 0.0) {
    const int s_min =
        std::max(th.s_floor, int(std::ceil(th.s_over_alpha * sc.alpha - 1e-12)));
    for (int s = s_min; s <= n; ++s) {
      const double t = sc.tail[std::size_t(s)];
      if (t > 0.0 && t * s >= th.substantial * sc.alpha) {
        sc.synchronized = true;
        sc.sync_witness_s = s;
        break;
      }
    }
    sc.very_strong_s = (0.75 - delta) * n;
    const int s_star = int(std::ceil(sc.very_strong_s - 1e-12));
    if (s_star >= 0 && s_star <= n) {
      const double t = sc.tail[std::size_t(std::max(s_star, 0))];
      sc.very_strong = t > 0.0 && t * sc.very_strong_s >= th.substantial * sc.alpha;
    }
  }
  return sc;
}

DecayReport tail_decay_check(const WeightProfile& wp, double margin, double min_rate) {
  require(margin > 0.0, ErrorKind::BadRange, "tail_decay_check: margin must be positive");
  DecayReport rep;
  const int n = wp.n();
  rep.s_start = int(std::ceil(wp.alpha + margin * n - 1e-12));
  if (rep.s_start < 1) rep.s_start = 1;
  if (rep.s_start > n) {
    rep.pass = rep.trivial = true;
    rep.note = "anchor beyond max weight";
    return rep;
  }
  const double anchor = wp.tail(rep.s_start);
  if (anchor <= 0.0) {
    rep.pass = rep.trivial = true;
    rep.note = "no tail mass at or beyond the anchor";
    return rep;
  }
  double worst = std::numeric_limits<double>::infinity();
  for (int s = rep.s_start + 1; s <= n; ++s) {
    const double t = wp.tail(s);
    if (t <= 0.0) continue;  // zero tail is infinitely decayed
    worst = std::min(worst, (std::log(anchor) - std::log(t)) / double(s - rep.s_start));
  }
  if (!std::isfinite(worst)) {
    rep.pass = rep.trivial = true;
    rep.note = "tail vanishes immediately after the anchor";
    return rep;
  }
  rep.rate = worst;
  rep.pass = worst >= min_rate;
  return rep;
}

IndependenceReport pairwise_independence_check(const CoarseDistribution& cd, double tau) {
  require(tau > 0.0, ErrorKind::BadRange, "pairwise_independence_check: tau must be positive");
  IndependenceReport rep;
  int within = 0;
  for (int i = 0; i < cd.n; ++i)
    for (int j = i + 1; j < cd.n; ++j) {
      const CorrelationRecord pc = pair_correlation(cd, i, j);
      ++rep.pairs_checked;
      const double c = pc.degenerate ? 0.0 : pc.pearson;
      if (std::abs(c) <= tau) ++within;
      if (std::abs(c) > std::abs(rep.worst_correlation)) {
        rep.worst_correlation = c;
        rep.worst_i = i;
        rep.worst_j = j;
      }
    }
  rep.fraction = rep.pairs_checked > 0 ? double(within) / rep.pairs_checked : 1.0;
  rep.pass = rep.fraction >= 1.0 - tau;
  return rep;
}

CoarseDistribution sample_syndromes(const SyndromeDistribution& d, std::size_t m, uint64_t seed) {
  require(m > 0, ErrorKind::BadRange, "sample_syndromes: need at least one sample");
  // Flatten the support with cumulative masses for inverse-CDF sampling.
  std::vector<double> cum;
  std::vector<uint32_t> masks;
  const int n = d.n();
  double acc = 0.0;
  d.masses.for_each([&](uint64_t flat, double mass) {
    acc += mass;
    cum.push_back(acc);
    masks.push_back(coarse_of_flat(flat, n));
  });
  require(!cum.empty() && acc > 0.0, ErrorKind::EmptySet, "sample_syndromes: empty distribution");

  CoarseDistribution cd;
  cd.n = n;
  cd.probs.assign(std::size_t(1) << n, 0.0);
  cd.sampled = true;
  cd.sample_size = m;
  Rng rng(seed);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    const std::size_t idx = std::min(std::size_t(it - cum.begin()), cum.size() - 1);
    cd.probs[masks[idx]] += 1.0;
  }
  for (double& p : cd.probs) p /= double(m);
  return cd;
}

}  // namespace noiselab

#include "noiselab/pauli.hpp"

#include <bit>

namespace noiselab {

namespace {

const Mat& letter_matrix(int xbit, int zbit) {
  static const Mat I = (Mat(2, 2) << 1, 0, 0, 1).finished();
  static const Mat X = (Mat(2, 2) << 0, 1, 1, 0).finished();
  static const Mat Y = (Mat(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  static const Mat Z = (Mat(2, 2) << 1, 0, 0, -1).finished();
  if (xbit && zbit) return Y;
  if (xbit) return X;
  if (zbit) return Z;
  return I;
}

int popcount32(uint32_t v) { return std::popcount(v); }

}  // namespace

PauliString PauliString::from_bits(int n, uint32_t x, uint32_t z) {
  require(n >= 1 && n <= 24, ErrorKind::BadRange, "PauliString: n must be in 1..24");
  const uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1);
  require((x & ~mask) == 0 && (z & ~mask) == 0, ErrorKind::BadRange,
          "PauliString: bits beyond qubit count");
  return {n, x, z};
}

PauliString PauliString::from_flat(int n, uint64_t flat) {
  return from_bits(n, uint32_t(flat >> n), uint32_t(flat & ((uint64_t(1) << n) - 1)));
}

PauliString PauliString::single(int n, int k, char letter) {
  require(k >= 0 && k < n, ErrorKind::BadIndex, "PauliString::single: qubit out of range");
  uint32_t x = 0, z = 0;
  const uint32_t bit = 1u << (n - 1 - k);
  switch (letter) {
    case 'I': break;
    case 'X': x = bit; break;
    case 'Y': x = bit; z = bit; break;
    case 'Z': z = bit; break;
    default: fail(ErrorKind::ParseError, std::string("PauliString: bad letter '") + letter + "'");
  }
  PauliString p = identity(n);
  p.x |= x;
  p.z |= z;
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  const int n = int(text.size());
  require(n >= 1 && n <= 24, ErrorKind::ParseError, "PauliString: length must be 1..24");
  uint32_t x = 0, z = 0;
  for (int k = 0; k < n; ++k) {
    const uint32_t bit = 1u << (n - 1 - k);
    switch (text[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        fail(ErrorKind::ParseError, std::string("PauliString: bad letter '") + text[k] + "'");
    }
  }
  return {n, x, z};
}

std::string PauliString::str() const {
  std::string out(std::size_t(n), 'I');
  for (int k = 0; k < n; ++k) {
    const bool xb = x_at(k), zb = z_at(k);
    out[std::size_t(k)] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return out;
}

cplx SignedPauli::phase() const {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((phase_exp % 4) + 4) % 4];
}

int SignedPauli::sign() const {
  const int e = ((phase_exp % 4) + 4) % 4;
  require(e == 0 || e == 2, ErrorKind::BadRange, "SignedPauli::sign: phase is imaginary");
  return e == 0 ? 1 : -1;
}

int weight(const PauliString& p) { return popcount32(p.x | p.z); }

uint32_t coarse(const PauliString& p) { return p.x | p.z; }

std::string coarse_string(const PauliString& p) {
  std::string out(std::size_t(p.n), '0');
  const uint32_t c = coarse(p);
  for (int k = 0; k < p.n; ++k)
    if ((c >> (p.n - 1 - k)) & 1u) out[std::size_t(k)] = '1';
  return out;
}

Mat pauli_matrix(const PauliString& p) {
  require(p.n <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "pauli_matrix: n exceeds dense cap");
  Mat m = Mat::Ones(1, 1);
  for (int k = 0; k < p.n; ++k) m = kron(m, letter_matrix(p.x_at(k), p.z_at(k)));
  return m;
}

SignedPauli multiply(const PauliString& a, const PauliString& b) {
  require(a.n == b.n, ErrorKind::LengthMismatch, "multiply: Pauli lengths differ");
  PauliString out{a.n, a.x ^ b.x, a.z ^ b.z};
  // Letter convention P(x,z) = i^{xz} X^x Z^z; commuting Z^{z_a} past X^{x_b}
  // picks up (-1)^{z_a . x_b}.
  int e = popcount32(a.x & a.z) + popcount32(b.x & b.z) + 3 * popcount32(out.x & out.z) +
          2 * popcount32(a.z & b.x);
  return {out, e % 4};
}

SignedPauli clifford_conjugate(const SignedPauli& sp, const Gate& g) {
  require(gate_is_clifford(g.kind), ErrorKind::NotClifford,
          std::string("clifford_conjugate: non-Clifford gate ") + gate_name(g.kind));
  PauliString p = sp.p;
  int e = sp.phase_exp;
  const int n = p.n;
  auto bit = [&](int q) { return uint32_t(1) << (n - 1 - q); };
  const uint32_t b0 = bit(g.qubits[0]);
  const uint32_t b1 = (g.arity() == 2) ? bit(g.qubits[1]) : 0;
  auto flip = [&](bool cond) {
    if (cond) e += 2;
  };
  switch (g.kind) {
    case GateKind::H: {
      flip(p.x & p.z & b0);
      const uint32_t xq = p.x & b0, zq = p.z & b0;
      p.x = (p.x & ~b0) | zq;
      p.z = (p.z & ~b0) | xq;
      break;
    }
    case GateKind::S:
      flip(p.x & p.z & b0);
      p.z ^= (p.x & b0);
      break;
    case GateKind::X:
      flip(p.z & b0);
      break;
    case GateKind::Y:
      flip((p.x ^ p.z) & b0);
      break;
    case GateKind::Z:
      flip(p.x & b0);
      break;
    case GateKind::CNOT: {
      const bool xc = p.x & b0, zc = p.z & b0, xt = p.x & b1, zt = p.z & b1;
      flip(xc && zt && !(xt ^ zc));
      if (xc) p.x ^= b1;
      if (zt) p.z ^= b0;
      break;
    }
    case GateKind::CZ: {
      const bool xa = p.x & b0, za = p.z & b0, xb = p.x & b1, zb = p.z & b1;
      flip(xa && xb && (za ^ zb));
      if (xb) p.z ^= b0;
      if (xa) p.z ^= b1;
      break;
    }
    case GateKind::SWAP: {
      const bool xa = p.x & b0, za = p.z & b0, xb = p.x & b1, zb = p.z & b1;
      p.x = (p.x & ~(b0 | b1)) | (xb ? b0 : 0) | (xa ? b1 : 0);
      p.z = (p.z & ~(b0 | b1)) | (zb ? b0 : 0) | (za ? b1 : 0);
      break;
    }
    default:
      fail(ErrorKind::NotClifford, "clifford_conjugate: unhandled gate");
  }
  return {p, e % 4};
}

SignedPauli clifford_conjugate(const PauliString& p, const Circuit& c) {
  require(c.n == p.n, ErrorKind::LengthMismatch, "clifford_conjugate: qubit counts differ");
  SignedPauli out{p, 0};
  for (const auto& cycle : c.cycles)
    for (const Gate& g : cycle) out = clifford_conjugate(out, g);
  return out;
}

void PauliMixture::add(uint64_t flat, double mass) {
  if (mass == 0.0) return;
  if (!dense_.empty()) {
    dense_[flat] += mass;
    return;
  }
  sparse_[flat] += mass;
  spill_if_needed();
}

double PauliMixture::at(uint64_t flat) const {
  if (!dense_.empty()) return dense_[flat];
  auto it = sparse_.find(flat);
  return it == sparse_.end() ? 0.0 : it->second;
}

double PauliMixture::total() const {
  double t = 0;
  for_each([&](uint64_t, double m) { t += m; });
  return t;
}

std::size_t PauliMixture::support_size() const {
  std::size_t c = 0;
  for_each([&](uint64_t, double) { ++c; });
  return c;
}

void PauliMixture::make_dense() {
  if (!dense_.empty()) return;
  require(n_ <= caps().dense_state_qubits, ErrorKind::CapExceeded,
          "PauliMixture: dense representation exceeds cap");
  dense_.assign(std::size_t(1) << (2 * n_), 0.0);
  for (const auto& [idx, m] : sparse_) dense_[idx] = m;
  sparse_.clear();
}

void PauliMixture::spill_if_needed() {
  if (sparse_.size() > kSparseLimit) make_dense();
}

namespace {

// Per-qubit butterfly: split off qubit 0's four letter blocks, recurse, and
// splice sub-indices into (x << k) | z packing.
void pauli_transform_rec(const Mat& m, int k, std::vector<cplx>& out) {
  if (k == 0) {
    out[0] = m(0, 0);
    return;
  }
  const Eigen::Index h = m.rows() / 2;
  const Mat m00 = m.topLeftCorner(h, h), m01 = m.topRightCorner(h, h),
            m10 = m.bottomLeftCorner(h, h), m11 = m.bottomRightCorner(h, h);
  const Mat blocks[4] = {
      0.5 * (m00 + m11),            // I: (x,z) = (0,0)
      0.5 * (m00 - m11),            // Z: (0,1)
      0.5 * (m01 + m10),            // X: (1,0)
      cplx(0, 0.5) * (m01 - m10),   // Y: (1,1)
  };
  const int sub = k - 1;
  std::vector<cplx> scratch(std::size_t(1) << (2 * sub));
  const uint64_t xz_bits[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int b = 0; b < 4; ++b) {
    pauli_transform_rec(blocks[b], sub, scratch);
    const uint64_t bx = xz_bits[b][0] << sub, bz = xz_bits[b][1] << sub;
    for (uint64_t xs = 0; xs < (uint64_t(1) << sub); ++xs)
      for (uint64_t zs = 0; zs < (uint64_t(1) << sub); ++zs)
        out[((bx | xs) << k) | (bz | zs)] = scratch[(xs << sub) | zs];
  }
}

}  // namespace

std::vector<cplx> pauli_coefficients(const Mat& m, int n) {
  require(m.rows() == dim_of(n) && m.cols() == dim_of(n), ErrorKind::DimensionMismatch,
          "pauli_coefficients: matrix dim does not match n");
  std::vector<cplx> out(std::size_t(1) << (2 * n));
  pauli_transform_rec(m, n, out);
  return out;
}

}  // namespace noiselab

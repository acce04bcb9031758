#include <doctest.h>

#include <noiselab/circuit.hpp>
#include <noiselab/pauli.hpp>

#include "oracles.hpp"

#include <complex>
#include <map>

using namespace noiselab;

TEST_CASE("parse and str round-trip") {
  for (const char* s : {"I", "X", "Y", "Z", "XIZ", "YYX", "IIII", "XYZI"}) {
    const auto p = PauliString::parse(s);
    CHECK(p.str() == s);
    CHECK(PauliString::from_flat(p.n, p.flat()) == p);
  }
  CHECK_THROWS_AS(PauliString::parse(""), Error);
  CHECK_THROWS_AS(PauliString::parse("XQ"), Error);
}

TEST_CASE("single-qubit placement uses leftmost = qubit 0") {
  const auto p = PauliString::single(3, 1, 'Y');
  CHECK(p.str() == "IYI");
  CHECK(weight(p) == 1);
  CHECK(coarse_string(p) == "010");
}

TEST_CASE("weight and coarse support") {
  CHECK(weight(PauliString::parse("IXYZ")) == 3);
  CHECK(coarse(PauliString::parse("IXYZ")) == 0b0111u);
  CHECK(coarse_string(PauliString::parse("ZIIX")) == "1001");
}

TEST_CASE("pauli_matrix singles match the textbook matrices") {
  const Mat x = pauli_matrix(PauliString::parse("X"));
  const Mat y = pauli_matrix(PauliString::parse("Y"));
  const Mat z = pauli_matrix(PauliString::parse("Z"));
  CHECK(std::abs(x(0, 1) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(y(1, 0) - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(z(1, 1) - cplx(-1, 0)) < 1e-15);
  // Tensor ordering: qubit 0 is the left factor.
  const Mat xz = pauli_matrix(PauliString::parse("XZ"));
  const Mat ref = kron(x, z);
  CHECK((xz - ref).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("multiply matches dense products exhaustively for n = 1, 2") {
  for (int n : {1, 2}) {
    const uint64_t count = uint64_t(1) << (2 * n);
    for (uint64_t f = 0; f < count; ++f) {
      for (uint64_t g = 0; g < count; ++g) {
        const auto a = PauliString::from_flat(n, f);
        const auto b = PauliString::from_flat(n, g);
        const auto prod = multiply(a, b);
        const Mat dense = pauli_matrix(a) * pauli_matrix(b);
        const Mat expect = prod.phase() * pauli_matrix(prod.p);
        CAPTURE(a.str());
        CAPTURE(b.str());
        REQUIRE((dense - expect).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("multiply known single-qubit phases") {
  const auto X = PauliString::parse("X");
  const auto Y = PauliString::parse("Y");
  const auto Z = PauliString::parse("Z");
  auto xz = multiply(X, Z);
  CHECK(xz.p == Y);
  CHECK(xz.phase() == cplx(0, -1));  // X Z = -i Y
  auto zx = multiply(Z, X);
  CHECK(zx.p == Y);
  CHECK(zx.phase() == cplx(0, 1));  // Z X = +i Y
  auto yy = multiply(Y, Y);
  CHECK(yy.p == PauliString::identity(1));
  CHECK(yy.phase() == cplx(1, 0));
}

TEST_CASE("trace orthogonality of the dense matrices") {
  const int n = 2;
  const uint64_t count = uint64_t(1) << (2 * n);
  for (uint64_t f = 0; f < count; ++f) {
    for (uint64_t g = 0; g < count; ++g) {
      const Mat pf = pauli_matrix(PauliString::from_flat(n, f));
      const Mat pg = pauli_matrix(PauliString::from_flat(n, g));
      const cplx tr = (pf.adjoint() * pg).trace();
      if (f == g)
        CHECK(std::abs(tr - cplx(4, 0)) < 1e-12);
      else
        CHECK(std::abs(tr) < 1e-12);
    }
  }
}

TEST_CASE("clifford_conjugate matches dense conjugation for every gate") {
  struct Case {
    Gate gate;
    int n;
  };
  const std::vector<Case> cases = {
      {Gate::h(0), 1},     {Gate::s(0), 1},     {Gate::x(0), 1},
      {Gate::y(0), 1},     {Gate::z(0), 1},     {Gate::h(1), 2},
      {Gate::s(1), 2},     {Gate::cnot(0, 1), 2}, {Gate::cnot(1, 0), 2},
      {Gate::cz(0, 1), 2}, {Gate::swap(0, 1), 2},
  };
  for (const auto& c : cases) {
    Circuit circ;
    circ.n = c.n;
    circ.cycles = {{c.gate}};
    const Mat u = cycle_unitary(circ, 1);
    const uint64_t count = uint64_t(1) << (2 * c.n);
    for (uint64_t f = 0; f < count; ++f) {
      const auto p = PauliString::from_flat(c.n, f);
      const auto got = clifford_conjugate(SignedPauli{p, 0}, c.gate);
      const auto want = oracle::conjugate_dense(p, u);
      CAPTURE(gate_name(c.gate.kind));
      CAPTURE(p.str());
      REQUIRE(got.p == want.p);
      REQUIRE(got.phase_exp % 4 == want.phase_exp % 4);
    }
  }
}

TEST_CASE("clifford_conjugate through a whole circuit matches segment unitary") {
  // GHZ preparation on 3 qubits exercises multi-cycle propagation.
  const Circuit c = ghz_circuit(3);
  const Mat u = segment_unitary(c, 0, c.T());
  const uint64_t count = uint64_t(1) << (2 * 3);
  for (uint64_t f = 0; f < count; ++f) {
    const auto p = PauliString::from_flat(3, f);
    const auto got = clifford_conjugate(p, c);
    const auto want = oracle::conjugate_dense(p, u);
    REQUIRE(got.p == want.p);
    REQUIRE(got.phase_exp % 4 == want.phase_exp % 4);
  }
}

TEST_CASE("clifford_conjugate rejects non-Clifford gates") {
  Circuit c;
  c.n = 1;
  c.cycles = {{Gate::t(0)}};
  CHECK_THROWS_AS(clifford_conjugate(PauliString::parse("X"), c), Error);
}

TEST_CASE("pauli_coefficients recovers coefficients of a Pauli combination") {
  // A = 0.5 II + 0.25 XZ - 0.125i YY on two qubits.
  const int n = 2;
  const Mat a = 0.5 * pauli_matrix(PauliString::parse("II")) +
                0.25 * pauli_matrix(PauliString::parse("XZ")) -
                cplx(0, 0.125) * pauli_matrix(PauliString::parse("YY"));
  const std::vector<cplx> coeff = pauli_coefficients(a, n);
  const uint64_t count = uint64_t(1) << (2 * n);
  for (uint64_t f = 0; f < count; ++f) {
    const auto p = PauliString::from_flat(n, f);
    // Direct trace: c_P = Tr(P A) / 2^n.
    const cplx direct = (pauli_matrix(p) * a).trace() / 4.0;
    CAPTURE(p.str());
    REQUIRE(std::abs(coeff[p.flat()] - direct) < 1e-12);
  }
}

TEST_CASE("pauli_coefficients matches direct traces on a random matrix") {
  const int n = 3;
  Rng rng(123);
  Mat a = ginibre(8, 8, rng);
  const std::vector<cplx> coeff = pauli_coefficients(a, n);
  const uint64_t count = uint64_t(1) << (2 * n);
  for (uint64_t f = 0; f < count; ++f) {
    const auto p = PauliString::from_flat(n, f);
    const cplx direct = (pauli_matrix(p) * a).trace() / 8.0;
    REQUIRE(std::abs(coeff[p.flat()] - direct) < 1e-10);
  }
}

TEST_CASE("PauliMixture accumulates, iterates in ascending flat order") {
  PauliMixture pm = PauliMixture::zero(2);
  pm.add(PauliString::parse("XI"), 0.25);
  pm.add(PauliString::parse("II"), 0.5);
  pm.add(PauliString::parse("XI"), 0.25);
  CHECK(pm.total() == doctest::Approx(1.0));
  CHECK(pm.support_size() == 2);
  std::vector<uint64_t> order;
  pm.for_each([&](uint64_t f, double m) {
    order.push_back(f);
    CHECK(m > 0.0);
  });
  REQUIRE(order.size() == 2);
  CHECK(order[0] < order[1]);
  CHECK(pm.at(PauliString::parse("XI").flat()) == doctest::Approx(0.5));
  CHECK(pm.at(PauliString::parse("ZZ").flat()) == 0.0);
}

TEST_CASE("PauliMixture dense spill keeps contents intact") {
  // n = 9 has 4^9 = 262144 strings > sparse limit of 65536; force the spill.
  const int n = 9;
  PauliMixture pm = PauliMixture::zero(n);
  const uint64_t count = uint64_t(1) << (2 * n);
  Rng rng(7);
  std::map<uint64_t, double> ref;
  for (int i = 0; i < 70000; ++i) {
    const uint64_t f = rng.below(count);
    pm.add(f, 1.0);
    ref[f] += 1.0;
  }
  CHECK(pm.total() == doctest::Approx(70000.0));
  CHECK(pm.support_size() == ref.size());
  for (const auto& [f, m] : ref) CHECK(pm.at(f) == doctest::Approx(m));
}

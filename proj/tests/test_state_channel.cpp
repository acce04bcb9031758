#include <doctest.h>

#include <noiselab/channel.hpp>
#include <noiselab/state.hpp>

#include "oracles.hpp"

using namespace noiselab;

TEST_CASE("state constructors satisfy the invariants") {
  for (const DensityMatrix& rho :
       {basis_state(2, 0b10), ghz_state(3), bell_state(), completely_mixed(2)}) {
    const auto rep = validate_state(rho);
    CAPTURE(rep.problems);
    CHECK(rep.ok);
  }
  CHECK(purity(bell_state()) == doctest::Approx(1.0));
  CHECK(purity(completely_mixed(2)) == doctest::Approx(0.25));
}

TEST_CASE("basis_state places amplitude at the bit pattern") {
  const DensityMatrix rho = basis_state(3, 0b101);
  CHECK(std::abs(rho.m(5, 5) - cplx(1, 0)) < 1e-15);
  CHECK(rho.m.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("validate_state flags broken inputs") {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = cplx(0.0, 0.3);  // not hermitian
  CHECK_FALSE(validate_state(DensityMatrix{1, bad}).ok);
  Mat neg = Mat::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;  // negative eigenvalue, trace 1
  CHECK_FALSE(validate_state(DensityMatrix{1, neg}).ok);
  CHECK_THROWS_AS(make_state(1, neg), Error);
}

TEST_CASE("trace_distance is a metric with the right scale") {
  const DensityMatrix a = basis_state(1, 0);
  const DensityMatrix b = basis_state(1, 1);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  const DensityMatrix mix = completely_mixed(1);
  CHECK(trace_distance(a, mix) == doctest::Approx(0.5));
}

TEST_CASE("reduced_state of Bell is maximally mixed") {
  const Mat r = reduced_state(bell_state(), {0}).m;
  CHECK((r - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("identity and unitary channels act as expected") {
  const QuantumChannel id = identity_channel(2);
  const DensityMatrix rho = ghz_state(2);
  CHECK((apply(id, rho).m - rho.m).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(1);
  const Mat u = haar_unitary(4, rng);
  const QuantumChannel uc = unitary_channel(u);
  const Mat expect = u * rho.m * u.adjoint();
  CHECK((apply(uc, rho).m - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("depolarizing masses on one qubit") {
  const QuantumChannel e = depolarizing(1, 0.1);
  REQUIRE(e.pauli_rep().has_value());
  const PauliMixture& pm = *e.pauli_rep();
  CHECK(pm.at(PauliString::parse("I").flat()) == doctest::Approx(0.925));
  CHECK(pm.at(PauliString::parse("X").flat()) == doctest::Approx(0.025));
  CHECK(pm.at(PauliString::parse("Y").flat()) == doctest::Approx(0.025));
  CHECK(pm.at(PauliString::parse("Z").flat()) == doctest::Approx(0.025));
  CHECK(pm.total() == doctest::Approx(1.0));
}

TEST_CASE("depolarizing product masses match the independent oracle") {
  const QuantumChannel e = depolarizing(2, 0.1);
  const auto ref = oracle::pauli_masses(e.kraus(), 2);
  e.pauli_rep()->for_each([&](uint64_t f, double m) {
    const auto it = ref.find(f);
    REQUIRE(it != ref.end());
    CHECK(m == doctest::Approx(it->second).epsilon(1e-10));
  });
  // Spot values: II keeps 0.925^2; XI carries 0.025 * 0.925.
  CHECK(e.pauli_rep()->at(PauliString::parse("II").flat()) ==
        doctest::Approx(0.925 * 0.925));
  CHECK(e.pauli_rep()->at(PauliString::parse("XI").flat()) ==
        doctest::Approx(0.025 * 0.925));
  CHECK(e.pauli_rep()->at(PauliString::parse("XY").flat()) ==
        doctest::Approx(0.025 * 0.025));
}

TEST_CASE("depolarizing with support restricts to chosen qubits") {
  const QuantumChannel e = depolarizing(3, 0.1, {1});
  e.pauli_rep()->for_each([&](uint64_t f, double) {
    const auto p = PauliString::from_flat(3, f);
    CHECK((coarse(p) & ~uint32_t(0b010)) == 0u);
  });
  CHECK(e.pauli_rep()->at(PauliString::parse("IXI").flat()) == doctest::Approx(0.025));
}

TEST_CASE("correlated_depolarizing spreads p uniformly over non-identity") {
  const QuantumChannel e = correlated_depolarizing(2, 0.1);
  REQUIRE(e.pauli_rep().has_value());
  const PauliMixture& pm = *e.pauli_rep();
  CHECK(pm.at(0) == doctest::Approx(1.0 - 0.1 + 0.1 / 16.0));
  CHECK(pm.at(PauliString::parse("ZZ").flat()) == doctest::Approx(0.1 / 16.0));
  CHECK(pm.total() == doctest::Approx(1.0));
}

TEST_CASE("apply with a Pauli mixture matches the Kraus oracle") {
  const QuantumChannel e = depolarizing(2, 0.2);
  Rng rng(9);
  const DensityMatrix rho = random_pure_state(2, rng);
  const Mat got = apply(e, rho).m;
  const Mat want = oracle::apply_kraus(e.kraus(), rho.m);
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("superop matches the column-built oracle") {
  const QuantumChannel e = depolarizing(1, 0.3);
  const Mat want = oracle::superop_by_columns(e.kraus(), 2);
  CHECK((e.superop() - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("choi matrix and kraus round-trip") {
  const QuantumChannel e = depolarizing(1, 0.25);
  const Mat choi = choi_matrix(e);
  // Choi of a trace-preserving channel has trace 2^n.
  CHECK(std::abs(choi.trace() - cplx(2, 0)) < 1e-10);
  const auto kraus2 = kraus_from_choi(choi, 1);
  const QuantumChannel e2(1, kraus2);
  CHECK(superop_distance(e, e2) < 1e-10);
}

TEST_CASE("canonical_kraus merges redundant decompositions") {
  // Same channel expressed with split Kraus sets must canonicalize equal.
  const double p = 0.3;
  std::vector<Mat> a = {std::sqrt(1 - p) * Mat::Identity(2, 2),
                        std::sqrt(p) * pauli_matrix(PauliString::parse("Z"))};
  // Split the Z piece into two copies with half the weight each.
  std::vector<Mat> b = {std::sqrt(1 - p) * Mat::Identity(2, 2),
                        std::sqrt(p / 2) * pauli_matrix(PauliString::parse("Z")),
                        std::sqrt(p / 2) * pauli_matrix(PauliString::parse("Z"))};
  const QuantumChannel ca = canonical_kraus(QuantumChannel(1, a));
  const QuantumChannel cb = canonical_kraus(QuantumChannel(1, b));
  REQUIRE(ca.kraus().size() == cb.kraus().size());
  CHECK(superop_distance(ca, cb) < 1e-10);
}

TEST_CASE("validate_cptp accepts channels and reports defects") {
  const auto ok = validate_cptp(depolarizing(2, 0.15));
  CHECK(ok.ok);
  CHECK(ok.tp_residual < 1e-12);
  CHECK(ok.min_choi_eig >= -1e-12);

  // 0.9 * identity map: TP defect has spectral norm |0.81 - 1| = 0.19.
  std::vector<Mat> scaled = {0.9 * Mat::Identity(2, 2)};
  const auto bad = validate_cptp(QuantumChannel(1, scaled));
  CHECK_FALSE(bad.ok);
  CHECK(bad.tp_residual == doctest::Approx(0.19));
}

TEST_CASE("validate_cptp flags non-positive mixtures") {
  PauliMixture pm = PauliMixture::zero(1);
  pm.add(PauliString::parse("I"), 1.2);
  pm.add(PauliString::parse("X"), -0.2);
  const auto rep = validate_cptp(QuantumChannel::from_pauli_mixture(pm));
  CHECK_FALSE(rep.ok);
  CHECK(rep.min_choi_eig < 0.0);
}

TEST_CASE("compose of depolarizing channels composes probabilities") {
  // dep(p) . dep(q) = dep(p + q - pq) for one qubit.
  const double p = 0.2, q = 0.3;
  const QuantumChannel composed = compose(depolarizing(1, p), depolarizing(1, q));
  const QuantumChannel expect = depolarizing(1, p + q - p * q);
  REQUIRE(composed.pauli_rep().has_value());
  composed.pauli_rep()->for_each([&](uint64_t f, double m) {
    CHECK(m == doctest::Approx(expect.pauli_rep()->at(f)).epsilon(1e-10));
  });
}

TEST_CASE("compose matches superoperator product for dense channels") {
  Rng rng(4);
  const Mat u = haar_unitary(2, rng);
  const QuantumChannel a = unitary_channel(u);
  const QuantumChannel b = depolarizing(1, 0.4);
  const QuantumChannel ab = compose(a, b);  // apply b first, then a
  const Mat want = a.superop() * b.superop();
  CHECK((ab.superop() - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("mix forms convex combinations with validated weights") {
  const QuantumChannel a = depolarizing(1, 0.0);
  const QuantumChannel b = depolarizing(1, 1.0);
  const QuantumChannel m = mix({a, b}, {0.75, 0.25});
  const QuantumChannel expect = depolarizing(1, 0.25);
  CHECK(superop_distance(m, expect) < 1e-10);
  CHECK_THROWS_AS(mix({a, b}, {0.5}), Error);
  CHECK_THROWS_AS(mix({a, b}, {0.6, 0.6}), Error);
  CHECK_THROWS_AS(mix({a, b}, {1.5, -0.5}), Error);
  CHECK_THROWS_AS(mix({}, {}), Error);
}

TEST_CASE("mix of Pauli mixtures stays a Pauli mixture") {
  const QuantumChannel m =
      mix({depolarizing(2, 0.1), correlated_depolarizing(2, 0.2)}, {0.5, 0.5});
  REQUIRE(m.pauli_rep().has_value());
  CHECK(m.pauli_rep()->total() == doctest::Approx(1.0));
  const double ii = m.pauli_rep()->at(0);
  CHECK(ii == doctest::Approx(0.5 * 0.925 * 0.925 + 0.5 * (0.8 + 0.2 / 16.0)));
}

TEST_CASE("conjugate_by_unitary transforms the channel correctly") {
  Rng rng(8);
  const Mat u = haar_unitary(2, rng);
  const QuantumChannel e = depolarizing(1, 0.3);
  const QuantumChannel c = conjugate_by_unitary(e, u);
  Rng rng2(12);
  const DensityMatrix rho = random_pure_state(1, rng2);
  const Mat direct =
      u * apply(e, DensityMatrix{1, u.adjoint() * rho.m * u}).m * u.adjoint();
  CHECK((apply(c, rho).m - direct).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("conjugate_by_clifford pushes the mixture through the circuit") {
  const Circuit c = ghz_circuit(2);
  const QuantumChannel e = depolarizing(2, 0.2);
  const QuantumChannel conj = conjugate_by_clifford(e, c);
  REQUIRE(conj.pauli_rep().has_value());
  // Oracle: conjugate the Kraus operators densely and re-extract masses.
  const Mat u = segment_unitary(c, 0, c.T());
  std::vector<Mat> dense;
  for (const Mat& a : e.kraus()) dense.push_back(u * a * u.adjoint());
  const auto ref = oracle::pauli_masses(dense, 2);
  conj.pauli_rep()->for_each([&](uint64_t f, double m) {
    const auto it = ref.find(f);
    REQUIRE(it != ref.end());
    CHECK(m == doctest::Approx(it->second).epsilon(1e-9));
  });
  CHECK(conj.pauli_rep()->total() == doctest::Approx(1.0));
}

TEST_CASE("extend_channel embeds and reorders qubits") {
  const QuantumChannel e1 = depolarizing(1, 0.4);
  const QuantumChannel big = extend_channel(e1, 3, {2});
  REQUIRE(big.n() == 3);
  REQUIRE(big.pauli_rep().has_value());
  CHECK(big.pauli_rep()->at(PauliString::parse("IIX").flat()) == doctest::Approx(0.1));
  CHECK(big.pauli_rep()->at(PauliString::parse("XII").flat()) == 0.0);

  // Two-qubit channel on reversed wires.
  PauliMixture pm = PauliMixture::zero(2);
  pm.add(PauliString::parse("XZ"), 1.0);
  const QuantumChannel xz = QuantumChannel::from_pauli_mixture(pm);
  const QuantumChannel rev = extend_channel(xz, 2, {1, 0});
  CHECK(rev.pauli_rep()->at(PauliString::parse("ZX").flat()) == doctest::Approx(1.0));
}

TEST_CASE("channel_error_rate closed forms for basis strategy") {
  // Single-qubit dep(p): basis rate = 1 - (1 - p/2).
  const double p = 0.1;
  CHECK(channel_error_rate(depolarizing(1, p), RateStrategy::basis()) ==
        doctest::Approx(p / 2.0).epsilon(1e-12));
  // Correlated dep on n = 2 at p = 0.1: p (1 - 2^-n) = 0.075.
  CHECK(channel_error_rate(correlated_depolarizing(2, 0.1), RateStrategy::basis()) ==
        doctest::Approx(0.1 * (1 - 0.25)));
}

TEST_CASE("channel_error_rate strategies are ordered") {
  const QuantumChannel e = depolarizing(2, 0.2);
  const double basis = channel_error_rate(e, RateStrategy::basis());
  const double rand = channel_error_rate(e, RateStrategy::random_pure(16, 5));
  const double refined = channel_error_rate(e, RateStrategy::refine(16, 5));
  CHECK(rand >= basis - 1e-12);
  CHECK(refined >= rand - 1e-12);
  CHECK(refined <= 1.0);
}

TEST_CASE("kraus cap guards dense materialization") {
  // dep(6, p) would need 4096 Kraus operators of 64x64 each (~268 MB): the
  // factory must keep the channel mixture-only.
  const QuantumChannel e = depolarizing(6, 0.1);
  CHECK(e.pauli_rep().has_value());
  CHECK_FALSE(e.has_kraus());
  CHECK_THROWS_AS(e.kraus(), Error);
  // Mixture-only channels still answer rate queries.
  CHECK(channel_error_rate(e, RateStrategy::basis()) ==
        doctest::Approx(1.0 - std::pow(0.95, 6)));
}

TEST_CASE("superop cap rejects oversized dense superoperators") {
  const QuantumChannel e = depolarizing(7, 0.1);
  CHECK_THROWS_AS(e.superop(), Error);
}

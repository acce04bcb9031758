#include <doctest.h>

#include <noiselab/noise_models.hpp>
#include <noiselab/smoothing.hpp>

#include "oracles.hpp"

using namespace noiselab;

TEST_CASE("preparation unitaries from matrices and circuits") {
  const PrepUnitary id = PrepUnitary::from_matrix(Mat::Identity(4, 4));
  CHECK_FALSE(id.clifford.has_value());
  CHECK(id.matrix.rows() == 4);

  const Circuit ghz = ghz_circuit(3);
  const PrepUnitary u = PrepUnitary::from_circuit(ghz);
  CHECK(u.clifford.has_value());
  CHECK((u.matrix - segment_unitary(ghz, 0, int(ghz.cycles.size()))).norm() < 1e-12);

  // A circuit with a non-Clifford gate still yields the matrix, untagged.
  Circuit t;
  t.n = 1;
  t.cycles = {{Gate::t(0)}};
  CHECK_FALSE(PrepUnitary::from_circuit(t).clifford.has_value());

  CHECK_THROWS_AS(PrepUnitary::from_matrix(Mat::Identity(3, 3)), Error);
}

TEST_CASE("envelope generator: identity preparation returns the base noise") {
  const QuantumChannel e0 = depolarizing(2, 0.1);
  const NoiseEnvelope env = memory_example_envelope(zero_state(2), e0);
  const QuantumChannel got =
      env.generator(zero_state(2), PrepUnitary::from_matrix(Mat::Identity(4, 4)));
  const SyndromeDistribution d0 = pauli_mass(e0), d1 = pauli_mass(got);
  for (uint64_t f = 0; f < 16; ++f)
    CHECK(d1.masses.at(f) == doctest::Approx(d0.masses.at(f)).epsilon(1e-12));
}

TEST_CASE("envelope generator: depolarizing noise is Hadamard-invariant") {
  const QuantumChannel e0 = depolarizing(1, 0.2);
  const NoiseEnvelope env = memory_example_envelope(zero_state(1), e0);
  Circuit h;
  h.n = 1;
  h.cycles = {{Gate::h(0)}};
  const QuantumChannel got = env.generator(zero_state(1), PrepUnitary::from_circuit(h));
  const SyndromeDistribution d0 = pauli_mass(e0), d1 = pauli_mass(got);
  for (uint64_t f = 0; f < 4; ++f)
    CHECK(d1.masses.at(f) == doctest::Approx(d0.masses.at(f)).epsilon(1e-12));
}

TEST_CASE("envelope on GHZ preparation spreads single-qubit noise to weight 3") {
  // Conjugating dep(p) on qubit 0 by the GHZ circuit: X0 -> Z0 stays weight 1,
  // Z0 -> X0X1X2 and Y0 -> Y0X1X2 land at weight 3.
  const double p = 0.12;
  const QuantumChannel e0 = depolarizing(3, p, {0});
  const NoiseEnvelope env = memory_example_envelope(zero_state(3), e0);
  const QuantumChannel got =
      env.generator(ghz_state(3), PrepUnitary::from_circuit(ghz_circuit(3)));
  const WeightProfile wp = weight_profile(pauli_mass(got));
  CHECK(wp.f[0] == doctest::Approx(1.0 - 0.75 * p).epsilon(1e-12));
  CHECK(wp.f[1] == doctest::Approx(p / 4.0).epsilon(1e-12));
  CHECK(wp.f[2] == doctest::Approx(0.0));
  CHECK(wp.f[3] == doctest::Approx(p / 2.0).epsilon(1e-12));
  CHECK(wp.alpha == doctest::Approx(p / 4.0 + 3.0 * p / 2.0).epsilon(1e-12));
}

TEST_CASE("envelope fast path matches the dense conjugation") {
  const QuantumChannel e0 = correlated_depolarizing(3, 0.15);
  const NoiseEnvelope env = memory_example_envelope(zero_state(3), e0);
  const Circuit c = ghz_circuit(3);
  const QuantumChannel fast = env.generator(ghz_state(3), PrepUnitary::from_circuit(c));
  CHECK(fast.pauli_rep().has_value());
  // Dense reference: strip the Clifford tag so the generator conjugates the
  // unitary matrix directly.
  const QuantumChannel dense =
      env.generator(ghz_state(3), PrepUnitary::from_matrix(segment_unitary(c, 0, 3)));
  CHECK(superop_distance(fast, dense) < 1e-10);
}

TEST_CASE("envelope generator rejects dimension mismatches") {
  const NoiseEnvelope env = memory_example_envelope(zero_state(2), depolarizing(2, 0.1));
  CHECK_THROWS_AS(env.generator(zero_state(2), PrepUnitary::from_matrix(Mat::Identity(8, 8))),
                  Error);
}

TEST_CASE("expected_qubit_errors closed forms") {
  CHECK(expected_qubit_errors(identity_channel(3)) == doctest::Approx(0.0));
  CHECK(expected_qubit_errors(depolarizing(5, 0.1)) == doctest::Approx(5 * 0.075));
  CHECK(expected_qubit_errors(correlated_depolarizing(4, 0.2)) == doctest::Approx(0.2 * 3.0));
}

TEST_CASE("conditioned Haar channel calibrates to the target error count") {
  const double target = 0.3;
  const QuantumChannel e = conditioned_haar_channel(4, target, 2026);
  REQUIRE(e.has_kraus());
  CHECK(e.kraus().size() == 1);
  const CptpReport rep = validate_cptp(e);
  CHECK(rep.tp_residual < 1e-9);
  const double alpha = expected_qubit_errors(e);
  CHECK(std::abs(alpha - target) <= 0.02 * target);
}

TEST_CASE("conditioned Haar channel is seed-deterministic") {
  const QuantumChannel a = conditioned_haar_channel(3, 0.5, 11);
  const QuantumChannel b = conditioned_haar_channel(3, 0.5, 11);
  const QuantumChannel c = conditioned_haar_channel(3, 0.5, 12);
  CHECK((a.kraus()[0] - b.kraus()[0]).norm() == doctest::Approx(0.0));
  CHECK((a.kraus()[0] - c.kraus()[0]).norm() > 1e-6);
}

TEST_CASE("conditioned Haar channel validates its range") {
  CHECK_THROWS_AS(conditioned_haar_channel(0, 0.3, 1), Error);
  CHECK_THROWS_AS(conditioned_haar_channel(9, 0.3, 1), Error);
  CHECK_THROWS_AS(conditioned_haar_channel(2, 0.0, 1), Error);
  CHECK_THROWS_AS(conditioned_haar_channel(2, 1.5, 1), Error);  // >= 3n/4
}

TEST_CASE("envelope noise feeds the smoothing pipeline") {
  // Derived noise from the envelope drives a detrimental schedule end to end.
  const Circuit c = ghz_circuit(3);
  const QuantumChannel e0 = depolarizing(3, 0.05, {0});
  const NoiseEnvelope env = memory_example_envelope(zero_state(3), e0);
  const QuantumChannel conj =
      env.generator(ghz_state(3), PrepUnitary::from_circuit(c));
  const std::vector<QuantumChannel> base = {e0, conj, conj};
  const DetrimentalSchedule ds = detrimental_transform(c, base, KernelSpec::uniform());
  for (const QuantumChannel& e : ds.derived) {
    const CptpReport rep = validate_cptp(e);
    CHECK(rep.tp_residual < 1e-9);
    CHECK(rep.min_choi_eig > -1e-9);
  }
}

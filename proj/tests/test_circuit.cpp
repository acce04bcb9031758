#include <doctest.h>

#include <noiselab/circuit.hpp>

#include "oracles.hpp"

using namespace noiselab;

TEST_CASE("validate rejects malformed circuits") {
  Circuit ok = ghz_circuit(3);
  CHECK(validate(ok).ok);

  Circuit bad_index;
  bad_index.n = 2;
  bad_index.cycles = {{Gate::h(2)}};
  CHECK_FALSE(validate(bad_index).ok);

  Circuit overlap;
  overlap.n = 2;
  overlap.cycles = {{Gate::h(0), Gate::x(0)}};  // same qubit twice in a cycle
  CHECK_FALSE(validate(overlap).ok);

  Circuit self_cnot;
  self_cnot.n = 2;
  self_cnot.cycles = {{Gate::cnot(1, 1)}};
  CHECK_FALSE(validate(self_cnot).ok);

  Circuit bad_angle;
  bad_angle.n = 1;
  bad_angle.cycles = {{Gate::rx(0, std::numeric_limits<double>::quiet_NaN())}};
  CHECK_FALSE(validate(bad_angle).ok);

  // Invalid circuits are refused by the simulators.
  CHECK_THROWS_AS(simulate_ideal(overlap, zero_state(2)), Error);
}

TEST_CASE("gate name round-trips and CX alias") {
  for (GateKind k : {GateKind::H, GateKind::S, GateKind::T, GateKind::X, GateKind::Y,
                     GateKind::Z, GateKind::RX, GateKind::RY, GateKind::RZ,
                     GateKind::CNOT, GateKind::CZ, GateKind::SWAP}) {
    CHECK(gate_kind_from_name(gate_name(k)) == k);
  }
  CHECK(gate_kind_from_name("CX") == GateKind::CNOT);
  CHECK_THROWS_AS(gate_kind_from_name("FOO"), Error);
}

TEST_CASE("cycle_unitary composes gates within a cycle") {
  Circuit c;
  c.n = 2;
  c.cycles = {{Gate::h(0), Gate::x(1)}};
  const Mat u = cycle_unitary(c, 1);
  Mat h(2, 2), x(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  x << 0, 1, 1, 0;
  CHECK((u - kron(h, x)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("segment_unitary multiplies cycles latest-first") {
  const Circuit c = ghz_circuit(2);  // H(0); CNOT(0,1)
  const Mat u01 = segment_unitary(c, 0, 1);
  const Mat u12 = segment_unitary(c, 1, 2);
  const Mat full = segment_unitary(c, 0, 2);
  CHECK((full - u12 * u01).cwiseAbs().maxCoeff() < 1e-13);
  // Empty segment is the identity.
  CHECK((segment_unitary(c, 1, 1) - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ghz circuit prepares the GHZ state") {
  for (int n : {2, 3, 4}) {
    const Circuit c = ghz_circuit(n);
    const Trajectory tr = simulate_ideal(c, zero_state(n));
    REQUIRE(int(tr.snapshots.size()) == c.T() + 1);
    const Mat got = tr.snapshots.back().m;
    CHECK((got - ghz_state(n).m).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("rotation gates match their generator expansions") {
  Circuit c;
  c.n = 1;
  const double th = 0.9;
  c.cycles = {{Gate::rx(0, th)}};
  const Mat u = cycle_unitary(c, 1);
  // RX(theta) = cos(theta/2) I - i sin(theta/2) X.
  CHECK(std::abs(u(0, 0) - cplx(std::cos(th / 2), 0)) < 1e-14);
  CHECK(std::abs(u(0, 1) - cplx(0, -std::sin(th / 2))) < 1e-14);
}

TEST_CASE("simulate_noisy with empty schedule equals ideal evolution") {
  const Circuit c = ghz_circuit(3);
  const DensityMatrix rho = zero_state(3);
  const Trajectory ideal = simulate_ideal(c, rho);
  const Trajectory noisy = simulate_noisy(c, rho, NoiseSchedule::none(c.T()));
  REQUIRE(ideal.snapshots.size() == noisy.snapshots.size());
  for (size_t i = 0; i < ideal.snapshots.size(); ++i)
    CHECK((ideal.snapshots[i].m - noisy.snapshots[i].m).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("uniform storage noise lands after every cycle") {
  // One-cycle identity-ish circuit: ideal does nothing, storage dep acts once.
  Circuit c;
  c.n = 1;
  c.cycles = {{Gate::z(0)}};
  const auto sched = NoiseSchedule::uniform_storage(c.T(), depolarizing(1, 0.5));
  const DensityMatrix plus = make_state(
      1, (Mat(2, 2) << 0.5, 0.5, 0.5, 0.5).finished());
  const Trajectory tr = simulate_noisy(c, plus, sched);
  // Z then dep(0.5): coherences scale by (1 - p) = 0.5 and flip sign.
  const Mat fin = tr.snapshots.back().m;
  CHECK(std::abs(fin(0, 1) - cplx(-0.25, 0)) < 1e-12);
  CHECK(std::abs(fin(0, 0) - cplx(0.5, 0)) < 1e-12);
}

TEST_CASE("gate noise attaches to the gate's qubits in its cycle") {
  Circuit c;
  c.n = 2;
  c.cycles = {{Gate::h(0)}, {Gate::cnot(0, 1)}};
  NoiseSchedule sched = NoiseSchedule::none(c.T());
  // Attach single-qubit dep to the H gate only.
  GateNoise gn = gate_noise(c.cycles[0][0], depolarizing(1, 0.3));
  gn.cycle = 1;
  sched.gate_noise.push_back(gn);
  const Trajectory tr = simulate_noisy(c, zero_state(2), sched);
  // After cycle 1: dep(0.3) acting on |+><+| (x) |0><0|.
  const Mat snap = tr.snapshots[1].m;
  CHECK(std::abs(snap(0, 2) - cplx(0.5 * 0.7, 0)) < 1e-12);
}

TEST_CASE("gate_noise rejects arity mismatch") {
  CHECK_THROWS_AS(gate_noise(Gate::cnot(0, 1), depolarizing(1, 0.1)), Error);
  CHECK_THROWS_AS(gate_noise(Gate::h(0), depolarizing(2, 0.1)), Error);
}

TEST_CASE("noise order switch changes the composition order") {
  Circuit c;
  c.n = 1;
  c.cycles = {{Gate::h(0)}};
  // Gate noise = X flip with certainty; storage = Z flip with certainty.
  PauliMixture px = PauliMixture::zero(1);
  px.add(PauliString::parse("X"), 1.0);
  PauliMixture pz = PauliMixture::zero(1);
  pz.add(PauliString::parse("Z"), 1.0);
  NoiseSchedule sched = NoiseSchedule::none(1);
  GateNoise gn = gate_noise(c.cycles[0][0], QuantumChannel::from_pauli_mixture(px));
  gn.cycle = 1;
  sched.gate_noise.push_back(gn);
  sched.storage[0] = QuantumChannel::from_pauli_mixture(pz);

  sched.order = NoiseOrder::GatesThenGateNoiseThenStorage;
  const Mat a = simulate_noisy(c, zero_state(1), sched).snapshots.back().m;
  sched.order = NoiseOrder::GatesThenStorageThenGateNoise;
  const Mat b = simulate_noisy(c, zero_state(1), sched).snapshots.back().m;
  // Z X |+> vs X Z |+> differ by a phase on the coherence; density matrices
  // here: both orders give |-><-| up to sign of off-diagonals... compute:
  // H|0> = |+>. Order A: X|+> = |+>, then Z -> |->. Order B: Z|+> = |->, then
  // X|-> = -|-> (same state). Density matrices agree, so instead distinguish
  // via a storage channel that does not commute with the gate noise.
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);

  // Replace storage with dephasing-to-zero and gate noise with a rotation to
  // break the symmetry: use amplitude-like channel built from Kraus.
  std::vector<Mat> proj = {(Mat(2, 2) << 1, 0, 0, 0).finished(),
                           (Mat(2, 2) << 0, 1, 0, 0).finished()};
  sched.storage[0] = QuantumChannel(1, proj);  // reset to |0>
  sched.order = NoiseOrder::GatesThenGateNoiseThenStorage;
  const Mat a2 = simulate_noisy(c, zero_state(1), sched).snapshots.back().m;
  sched.order = NoiseOrder::GatesThenStorageThenGateNoise;
  const Mat b2 = simulate_noisy(c, zero_state(1), sched).snapshots.back().m;
  // A: H, X-noise, reset -> |0><0|.  B: H, reset, X-noise -> |1><1|.
  CHECK(std::abs(a2(0, 0) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(b2(1, 1) - cplx(1, 0)) < 1e-12);
}

TEST_CASE("simulate_noisy records the noisy superoperator for small n") {
  Circuit c;
  c.n = 1;
  c.cycles = {{Gate::h(0)}};
  NoiseSchedule sched = NoiseSchedule::uniform_storage(1, depolarizing(1, 0.2));
  const Trajectory tr = simulate_noisy(c, zero_state(1), sched);
  REQUIRE(tr.noisy_superop.has_value());
  // Check action on vec(rho) matches the snapshot evolution.
  const Vec v_in = vec(zero_state(1).m);
  const Vec v_out = (*tr.noisy_superop) * v_in;
  CHECK((unvec(v_out, 2) - tr.snapshots.back().m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("overall_error_channel isolates noise from the ideal circuit") {
  const Circuit c = ghz_circuit(2);
  NoiseSchedule sched = NoiseSchedule::none(c.T());
  // Noiseless: error channel must be the identity channel.
  const Trajectory tr = simulate_noisy(c, zero_state(2), sched);
  const QuantumChannel err = overall_error_channel(tr, c);
  CHECK(superop_distance(err, identity_channel(2)) < 1e-10);

  // With storage dep(p) after each of the 2 cycles the residual error channel
  // composes two conjugated dep layers; verify it is CPTP and nontrivial.
  NoiseSchedule s2 = NoiseSchedule::uniform_storage(c.T(), depolarizing(2, 0.1));
  const Trajectory tr2 = simulate_noisy(c, zero_state(2), s2);
  const QuantumChannel err2 = overall_error_channel(tr2, c);
  const auto rep = validate_cptp(err2);
  CAPTURE(rep.tp_residual);
  CAPTURE(rep.min_choi_eig);
  CHECK(rep.ok);
  CHECK(superop_distance(err2, identity_channel(2)) > 1e-3);
  // Reconstruction: ideal superop composed with error equals noisy superop.
  const Mat ideal_s = [&] {
    const Mat u = segment_unitary(c, 0, c.T());
    return kron(u.conjugate(), u).eval();
  }();
  CHECK((err2.superop() * ideal_s - *tr2.noisy_superop).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trajectory memory budget guards huge requests") {
  const Caps saved = caps();
  caps().trajectory_bytes = 1024;  // artificially tiny budget
  const Circuit c = ghz_circuit(3);
  CHECK_THROWS_AS(simulate_ideal(c, zero_state(3)), Error);
  caps().trajectory_bytes = saved.trajectory_bytes;
  CHECK_NOTHROW(simulate_ideal(c, zero_state(3)));

  caps().dense_state_qubits = 2;
  CHECK_THROWS_AS(simulate_ideal(c, zero_state(3)), Error);
  caps() = saved;
}

TEST_CASE("product rx circuit stays a product state") {
  const Circuit c = product_rx_circuit(3, 0.4);
  const Trajectory tr = simulate_ideal(c, zero_state(3));
  const DensityMatrix fin = tr.snapshots.back();
  // Purity 1 and single-qubit marginals all equal.
  CHECK(purity(fin) == doctest::Approx(1.0));
  const Mat m0 = reduced_state(fin, {0}).m;
  const Mat m2 = reduced_state(fin, {2}).m;
  CHECK((m0 - m2).cwiseAbs().maxCoeff() < 1e-12);
}

#include <doctest.h>

#include <noiselab/entanglement.hpp>

#include "oracles.hpp"

using namespace noiselab;

namespace {

DensityMatrix werner(double p) {
  return make_state(2, p * bell_state().m + (1.0 - p) * Mat::Identity(4, 4) / 4.0);
}

}  // namespace

TEST_CASE("von Neumann entropy closed forms") {
  CHECK(von_neumann_entropy(basis_state(2, 0b01)).value == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(completely_mixed(1)).value == doctest::Approx(1.0));
  CHECK(von_neumann_entropy(completely_mixed(3)).value == doctest::Approx(3.0));
  // diag(0.9, 0.1): binary entropy h(0.1).
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 0.9;
  m(1, 1) = 0.1;
  const double h = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  CHECK(von_neumann_entropy(make_state(1, m)).value == doctest::Approx(h).epsilon(1e-6));
  CHECK(std::abs(von_neumann_entropy(make_state(1, m)).value - 0.4690) < 1e-4);
}

TEST_CASE("entropy is unitarily invariant and symmetric across pure bipartitions") {
  Rng rng(5);
  const DensityMatrix rho = random_pure_state(3, rng);
  const Mat u = haar_unitary(8, rng);
  const DensityMatrix rotated = make_state(3, u * rho.m * u.adjoint());
  CHECK(std::abs(von_neumann_entropy(rotated).value - von_neumann_entropy(rho).value) < 1e-10);
  // S(X) = S(Y) for a pure state split X|Y.
  const double sx = von_neumann_entropy(reduced_state(rho, {0})).value;
  const double sy = von_neumann_entropy(reduced_state(rho, {1, 2})).value;
  CHECK(std::abs(sx - sy) < 1e-9);
}

TEST_CASE("negativity: product, Bell, and Werner mixtures") {
  CHECK(negativity(basis_state(2, 0b10), {1}) == doctest::Approx(0.0));
  CHECK(negativity(bell_state(), {1}) == doctest::Approx(0.5));
  CHECK(negativity(bell_state(), {0}) == doctest::Approx(0.5));

  // 1/2 Bell + 1/2 I/4: spectrum of the partial transpose, computed directly.
  const DensityMatrix w = werner(0.5);
  const Eigh e = eigh(partial_transpose(w.m, 2, {1}));
  double expect = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (e.values[i] < 0.0) expect -= e.values[i];
  CHECK(negativity(w, {1}) == doctest::Approx(expect));
  CHECK(expect == doctest::Approx(0.125));  // (2p - 1)/4 at p = 1/2

  // Werner states are separable (PPT) at p <= 1/3.
  CHECK(negativity(werner(1.0 / 3.0), {1}) == doctest::Approx(0.0).epsilon(1e-12));

  // Separable mixtures of random product states have zero negativity.
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Mat acc = Mat::Zero(4, 4);
    for (int k = 0; k < 6; ++k) {
      const DensityMatrix pa = random_pure_state(1, rng), pb = random_pure_state(1, rng);
      acc += kron(pa.m, pb.m) / 6.0;
    }
    CHECK(negativity(make_state(2, acc), {1}) < 1e-12);
  }
}

TEST_CASE("separable distance: product and maximally mixed states sit at zero") {
  const SepDistanceEstimate prod =
      sep_distance_estimate(basis_state(2, 0b01), {0}, {1}, 800, 3);
  CHECK(prod.lower == doctest::Approx(0.0));
  CHECK(prod.upper <= 1e-6);

  const SepDistanceEstimate mixed =
      sep_distance_estimate(completely_mixed(2), {0}, {1}, 800, 3);
  CHECK(mixed.lower == doctest::Approx(0.0));
  CHECK(mixed.upper <= 1e-6);
}

TEST_CASE("separable distance of the Bell state") {
  const SepDistanceEstimate a = sep_distance_estimate(bell_state(), {0}, {1}, 6000, 11);
  const SepDistanceEstimate b = sep_distance_estimate(bell_state(), {0}, {1}, 6000, 77);
  // Witness lower bound: negativity / 2^min(|A|,|B|) = 0.5 / 2.
  CHECK(a.lower == doctest::Approx(0.25));
  CHECK(a.lower <= a.upper + 1e-9);
  // The classical mixture (|00><00| + |11><11|)/2 sits at trace distance 1/2,
  // so the search must land at or below it; seeds agree within 0.01.
  CHECK(a.upper <= 0.51);
  CHECK(a.upper >= 0.25);
  CHECK(std::abs(a.upper - b.upper) < 0.01);
}

TEST_CASE("separable distance validates its inputs") {
  CHECK_THROWS_AS(sep_distance_estimate(bell_state(), {0}, {0}, 10, 1), Error);
  CHECK_THROWS_AS(sep_distance_estimate(bell_state(), {0}, {}, 10, 1), Error);
  CHECK_THROWS_AS(sep_distance_estimate(bell_state(), {0}, {1}, 0, 1), Error);
  CHECK_THROWS_AS(sep_distance_estimate(ghz_state(5), {0, 1}, {2, 3, 4}, 10, 1), Error);
}

TEST_CASE("max-entropy completion: pure product state is pinned") {
  const MaxEntSolution sol = max_entropy_completion(basis_state(2, 0b10));
  CHECK(sol.constraint_residual <= 1e-6);
  CHECK(sol.entropy.value == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(trace_distance(sol.rho_star, basis_state(2, 0b10)) < 1e-4);
  CHECK(validate_state(sol.rho_star).ok);
}

TEST_CASE("max-entropy completion: Bell marginals give the maximally mixed state") {
  const MaxEntSolution sol = max_entropy_completion(bell_state());
  CHECK(sol.constraint_residual <= 1e-6);
  CHECK(sol.entropy.value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(trace_distance(sol.rho_star, completely_mixed(2)) < 1e-5);
}

TEST_CASE("max-entropy completion: GHZ3 pair marginals confine the support") {
  const MaxEntSolution sol = max_entropy_completion(ghz_state(3));
  CHECK(sol.constraint_residual <= 1e-6);
  CHECK(sol.entropy.value == doctest::Approx(1.0).epsilon(1e-3));
  // rho* = (|000><000| + |111><111|)/2.
  Mat expect = Mat::Zero(8, 8);
  expect(0, 0) = 0.5;
  expect(7, 7) = 0.5;
  CHECK(trace_distance(sol.rho_star, make_state(3, expect)) < 1e-4);
}

TEST_CASE("max-entropy completion invariants") {
  Rng rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    // Full-rank inputs keep the feasible set's interior nonempty.
    const DensityMatrix rho =
        make_state(3, 0.8 * random_pure_state(3, rng).m + 0.2 * Mat::Identity(8, 8) / 8.0);
    const MaxEntSolution sol = max_entropy_completion(rho);
    // Completion can only raise entropy (rho itself is feasible).
    CHECK(sol.entropy.value >= von_neumann_entropy(rho).value - 1e-6);
    CHECK(validate_state(sol.rho_star).ok);
    // Every proper-subset marginal matches.
    for (const std::vector<int>& sub :
         {std::vector<int>{0, 1}, std::vector<int>{0, 2}, std::vector<int>{1, 2}})
      CHECK(trace_distance(reduced_state(sol.rho_star, sub), reduced_state(rho, sub)) < 1e-6);
  }
  CHECK_THROWS_AS(max_entropy_completion(completely_mixed(5)), Error);
}

TEST_CASE("ENT measure closed forms") {
  CHECK(std::abs(ent_measure(basis_state(3, 0b000))) < 1e-4);
  CHECK(ent_measure(bell_state()) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(ent_measure(ghz_state(3)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("ENT-tilde sums qualifying subsets") {
  // Bell pair: single subset {0,1}.
  const EntReport bell = ent_tilde(bell_state());
  CHECK(bell.per_subset.size() == 1);
  CHECK(bell.ent_tilde == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(bell.ent == doctest::Approx(2.0).epsilon(1e-3));

  // GHZ3: three pairs plus the triple; pair terms equal the per-subset oracle.
  const EntReport ghz = ent_tilde(ghz_state(3));
  CHECK(ghz.per_subset.size() == 4);
  const double pair_ent = ent_measure(reduced_state(ghz_state(3), {0, 1}));
  const double expect = 3.0 * pair_ent + 1.0;
  CHECK(ghz.ent_tilde == doctest::Approx(expect).epsilon(1e-3));
  CHECK(ghz.ent == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& [subset, value] : ghz.per_subset) {
    if (subset.size() == 2) CHECK(value == doctest::Approx(pair_ent).epsilon(1e-3));
  }
  // The pair marginal of GHZ has classical-mixture marginals: ENT = -1 + 2.
  CHECK(pair_ent == doctest::Approx(1.0).epsilon(1e-3));

  const EntReport prod = ent_tilde(basis_state(3, 0b101));
  CHECK(std::abs(prod.ent_tilde) < 1e-3);
}

TEST_CASE("concurrence and entanglement of formation") {
  CHECK(concurrence(bell_state()) == doctest::Approx(1.0));
  CHECK(entanglement_of_formation(bell_state()) == doctest::Approx(1.0));
  CHECK(concurrence(basis_state(2, 0b11)) == doctest::Approx(0.0));
  CHECK(entanglement_of_formation(completely_mixed(2)) == doctest::Approx(0.0));
  // Werner state: C = max(0, (3p - 1)/2).
  CHECK(concurrence(werner(0.8)) == doctest::Approx((3 * 0.8 - 1) / 2).epsilon(1e-10));
  CHECK(concurrence(werner(0.2)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(concurrence(completely_mixed(3)), Error);
}

TEST_CASE("emergent entanglement: product, attached Bell, GHZ3") {
  CHECK(emergent_entanglement(basis_state(3, 0b000), 0, 1, 400, 9).value ==
        doctest::Approx(0.0));

  // Bell (x) |0>: the unmeasured pair is already maximally entangled.
  const DensityMatrix bell0 = make_state(3, kron(bell_state().m, basis_state(1, 0).m));
  CHECK(emergent_entanglement(bell0, 0, 1, 400, 9).value == doctest::Approx(1.0).epsilon(1e-6));

  // GHZ3: an X-basis measurement of qubit 2 leaves a Bell pair.
  const EmergentResult ghz = emergent_entanglement(ghz_state(3), 0, 1, 4000, 9);
  CHECK(ghz.value == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("emergent entanglement is monotone in budget and validates inputs") {
  const DensityMatrix rho = ghz_state(4);
  const double small = emergent_entanglement(rho, 0, 3, 200, 5).value;
  const double big = emergent_entanglement(rho, 0, 3, 2000, 5).value;
  CHECK(big >= small - 1e-12);

  CHECK_THROWS_AS(emergent_entanglement(rho, 1, 1, 10, 1), Error);
  CHECK_THROWS_AS(emergent_entanglement(rho, 0, 7, 10, 1), Error);
  CHECK_THROWS_AS(emergent_entanglement(ghz_state(6) /* too big */, 0, 1, 10, 1), Error);
  CHECK_THROWS_AS(emergent_entanglement(rho, 0, 1, 0, 1), Error);
}

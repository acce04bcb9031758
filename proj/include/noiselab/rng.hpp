#pragma once

// Deterministic randomness. One counter-based generator (splitmix64), an
// owned Box-Muller normal (std::normal_distribution is not bit-portable),
// and seed derivation hash(master, unit_kind, unit_index) so parallel
// scheduling cannot perturb results.

#include <cstdint>
#include <string_view>

#include "noiselab/common.hpp"

namespace noiselab {

struct SplitMix64 {
  uint64_t state = 0;
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline uint64_t fnv1a64(const void* data, std::size_t len, uint64_t h = 0xCBF29CE484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ull;
  }
  return h;
}

// Per-unit seed: hash(master_seed, unit_kind, unit_index), scrambled.
inline uint64_t derive_seed(uint64_t master, std::string_view unit_kind, uint64_t unit_index) {
  uint64_t h = fnv1a64(&master, sizeof(master));
  h = fnv1a64(unit_kind.data(), unit_kind.size(), h);
  h = fnv1a64(&unit_index, sizeof(unit_index), h);
  SplitMix64 sm{h};
  return sm.next();
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : sm_{seed} {}

  uint64_t next_u64() { return sm_.next(); }

  double uniform() {  // [0, 1)
    return double(sm_.next() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Unbiased integer in [0, bound) via rejection.
  uint64_t below(uint64_t bound);

  double normal();  // N(0,1), Box-Muller with cached second variate

  cplx cnormal() {  // complex standard normal, E|z|^2 = 1
    return cplx(normal(), normal()) * (1.0 / std::sqrt(2.0));
  }

 private:
  SplitMix64 sm_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Matrix ensembles.
Mat ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Mat haar_unitary(Eigen::Index d, Rng& rng);
Mat gue(Eigen::Index d, Rng& rng);           // Hermitian, E|H_ij|^2 = 1 off-diagonal
Mat gue_traceless(Eigen::Index d, Rng& rng);

}  // namespace noiselab

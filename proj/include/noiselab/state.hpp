#pragma once

// Density matrices: construction, validation, factories, reductions.

#include <vector>

#include "noiselab/common.hpp"
#include "noiselab/linalg.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

struct DensityMatrix {
  int n = 0;
  Mat m;
};

ValidationReport validate_state(const DensityMatrix& rho);
DensityMatrix make_state(int n, Mat m);  // validates

DensityMatrix basis_state(int n, uint64_t bits);
DensityMatrix zero_state(int n);
DensityMatrix pure_state(const Vec& psi);  // n inferred from dimension
DensityMatrix bell_state();
DensityMatrix ghz_state(int n);
DensityMatrix completely_mixed(int n);
DensityMatrix random_pure_state(int n, Rng& rng);

double purity(const DensityMatrix& rho);

// Trace out everything not in Z (strictly increasing qubit list).
DensityMatrix reduced_state(const DensityMatrix& rho, const std::vector<int>& Z);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace noiselab

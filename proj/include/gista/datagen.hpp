#pragma once

#include <cstdint>

#include "gista/mat.hpp"

namespace gista {

/// Recipe for a sparse, well-conditioned synthetic precision matrix.
struct ModelSpec {
  int p = 0;
  double zero_prob = 0.0;  // probability an off-diagonal entry is zeroed
  std::uint64_t seed = 0;
};

struct SyntheticModel {
  DenseSym omega;   // true precision matrix, PD with lambda_min = 1
  DenseSym sigma;   // omega^{-1}
  double nnz_frac;  // fraction of nonzero off-diagonal entries
};

/// Draw the upper triangle i.i.d. uniform(-1,1), zero each entry with
/// probability zero_prob, mirror, then add a multiple of the identity so the
/// smallest eigenvalue lands at exactly 1 (Jacobi spectrum for p <= 200,
/// shifted power iteration above). Deterministic in the seed.
SyntheticModel gen_model(const ModelSpec& spec);

struct SampleResult {
  Mat X;       // n x p, rows are samples from N(0, sigma)
  DenseSym S;  // (1/n) * X^T X, no mean subtraction
};

/// Draw n zero-mean Gaussian samples with covariance model.sigma via
/// x = L z (L the Cholesky factor of sigma, z standard normal from
/// Box-Muller). Deterministic in the seed.
SampleResult sample_data(const SyntheticModel& model, int n, std::uint64_t seed);

}  // namespace gista

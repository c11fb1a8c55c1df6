#pragma once

#include <optional>
#include <span>

#include "gista/mat.hpp"

namespace gista::ref {

// Plain serial implementations of the parallel kernels in linalg.hpp.
// Kept for correctness tests and for the serial side of bench_kernels.
// Per-element kernels follow the exact arithmetic order of the parallel
// versions, so those comparisons can assert bitwise equality; reductions
// accumulate in a single running sum and are compared with a tolerance.

std::optional<CholFactor> cholesky(const DenseSym& A);
DenseSym inverse_from_chol(const CholFactor& L);
DenseSym soft_threshold(const DenseSym& A, double tau);
double frob_norm(const DenseSym& A);
double inner(const DenseSym& A, const DenseSym& B);
void matvec(const DenseSym& A, std::span<const double> x, std::span<double> y);
Mat matmul(const DenseSym& A, const DenseSym& B);

}  // namespace gista::ref

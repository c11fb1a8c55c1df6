#pragma once

#include <optional>
#include <span>

#include "gista/mat.hpp"

namespace gista {

// Dense symmetric kernels. The hot loops are OpenMP-parallel over output
// rows/columns with serial inner accumulation, so every result is bitwise
// independent of thread count and schedule. Serial twins used for testing
// and benchmarking live in linalg_ref.hpp.

/// Lower Cholesky factor of A, or nullopt if a pivot <= 0 is met. The
/// nullopt outcome is ordinary control flow: it doubles as the positive-
/// definiteness test in the solver's line search.
std::optional<CholFactor> cholesky(const DenseSym& A);

/// A^{-1} from its Cholesky factor.
DenseSym inverse_from_chol(const CholFactor& L);

/// log det A = 2 * sum_i log L_ii.
double log_det_from_chol(const CholFactor& L);

/// Dominant eigenvalue by power iteration from the normalized all-ones
/// vector. Intended for positive definite A, where the dominant eigenvalue
/// is the spectral norm. If the Rayleigh quotient has not settled after
/// max_iters, the start vector is perturbed by e_1 and the iteration
/// restarted once; a second failure throws NoConvergence.
double power_iter_max_eig(const DenseSym& A, double tol = 1e-6, int max_iters = 1000);

/// ||A||_2 for symmetric A of any signature: power iteration applied to
/// A*A (two matvecs per step), then a square root.
double spectral_norm(const DenseSym& A);

/// Entrywise sgn(a) * max(|a| - tau, 0); sgn(0) = 0 so exact zeros stay put.
DenseSym soft_threshold(const DenseSym& A, double tau);

double frob_norm(const DenseSym& A);
double frob_norm_diff(const DenseSym& A, const DenseSym& B);  // ||A - B||_F
double trace(const DenseSym& A);

/// <A,B> = sum_ij A_ij B_ij, which equals Tr(AB) for symmetric operands.
double inner(const DenseSym& A, const DenseSym& B);

/// 1^T |A| 1 = sum_ij |A_ij|; also the l1 penalty term ||A||_1.
double abs_sum_quad(const DenseSym& A);

/// Count of exactly nonzero entries over all p^2 cells.
int nnz(const DenseSym& A);

void matvec(const DenseSym& A, std::span<const double> x, std::span<double> y);

/// General product A*B (not symmetric in general); test/bench helper.
Mat matmul(const DenseSym& A, const DenseSym& B);

DenseSym add_scaled(const DenseSym& A, const DenseSym& B, double s);  // A + s*B
DenseSym shift_diag(const DenseSym& A, double s);                     // A + s*I

/// max_i sum_j |A_ij|; a Gershgorin bound on the spectral radius.
double max_abs_row_sum(const DenseSym& A);

}  // namespace gista

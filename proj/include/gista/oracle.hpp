#pragma once

#include <vector>

#include "gista/mat.hpp"
#include "gista/solver.hpp"

namespace gista::oracle {

// Small-scale verification tools, deliberately independent of the production
// solve path: a full-spectrum Jacobi eigensolver, a projected-gradient solver
// for the box-constrained dual problem, and a first-order optimality checker.
// Tests use these to validate the main solver without circularity.

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int rotations = 0;
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius mass drops below
/// tol * ||A||_F. Throws NoConvergence after max_sweeps.
JacobiResult jacobi_eigen(const DenseSym& A, double tol = 1e-12, int max_sweeps = 100);

struct DualResult {
  DenseSym theta;          // (S + U)^{-1} at the final dual point
  double dual_objective = 0.0;  // log det(S + U) + p
  int iterations = 0;
};

/// Projected gradient ascent on the dual: maximize log det(S+U) + p over the
/// entrywise box |U_ij| <= rho. Steps are seeded at 0.1 * lambda_min(S+U)^2
/// and halved until S+U stays PD and the objective does not decrease.
/// Terminates once successive objectives change by less than tol and the
/// primal-dual gap is at or below 10*tol. Enforces p <= 50.
DualResult dual_solve(const ProblemInstance& P, double tol, int max_iters = 2000000);

struct KktViolation {
  int i = 0;
  int j = 0;
  double value = 0.0;    // magnitude of the violated quantity
  bool on_support = false;
};

struct KktReport {
  std::vector<KktViolation> violations;
  double max_excess = 0.0;  // worst overshoot beyond the allowed tolerance

  bool ok() const { return violations.empty(); }
};

/// First-order optimality check: on the support |theta_ij| > zero_tol the
/// gradient entry must cancel against rho*sgn(theta_ij) to within grad_tol;
/// off the support it must lie inside [-rho - grad_tol, rho + grad_tol].
KktReport kkt_check(const ProblemInstance& P, const DenseSym& theta, double zero_tol,
                    double grad_tol);

}  // namespace gista::oracle
